import pytest

from curveaut.groups.catalog import bundled_catalog

# criterion number -> (description, passed, seconds); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def catalog():
    return bundled_catalog()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok, secs = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}  ({secs:.2f}s)")
