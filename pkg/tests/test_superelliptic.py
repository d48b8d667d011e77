import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from curveaut.errors import DomainError, ParameterError, UnsupportedError
from curveaut.ffield import Mobius, mobius_closure
from curveaut.groups.catalog import gap_id_table
from curveaut.groups.construct import cyclic, dihedral, direct_product, symmetric
from curveaut.groups.zoo import named_group
from curveaut.signatures import CoverData, RamifiedPlace, cover_genus
from curveaut.superelliptic import (CyclicCurveData, action_field, char2_hyperelliptic_groups, char2_ramification_types,
                                    coefficient_field, cyclic_curve_genus, genus34_superelliptic_lists,
                                    reduced_group, resolve_gap_ids, standard_generators, table1_case,
                                    table1_function, verify_invariance, verify_ramification)

PRIMES = [p for p in range(5, 122) if all(p % d for d in range(2, p))]


def small_cases():
    out = []
    for p in PRIMES:
        for m in range(2, 13):
            for cid in (1, 2):
                if m % p:
                    out.append(table1_case(cid, p, m=m))
        for cid in (3, 4):
            out.append(table1_case(cid, p))
    return [c for c in out if coefficient_field(c).q <= 121 and _action_fits(c)]


def _action_fits(case):
    # the Moebius generators may need an extension above the field size cap
    try:
        action_field(case)
    except ParameterError:
        return False
    return True


SMALL_CASES = small_cases()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_CASES))
def test_invariance_small_fields(case):
    rep = verify_invariance(case)
    assert rep.ok, rep.to_json()
    assert rep.degree == rep.group_order == case.order


def test_every_small_case_kind_present():
    assert {c.case_id for c in SMALL_CASES} == {1, 2, 3, 4}
    assert max(coefficient_field(c).q for c in SMALL_CASES) <= 121


@pytest.mark.parametrize("cid,p,kw", [
    (1, 11, {"m": 5}), (2, 7, {"m": 3}), (3, 13, {}), (4, 13, {}), (4, 5, {}),
    (5, 11, {}), (5, 19, {}), (5, 3, {}),
    (6, 3, {"t": 1}), (6, 2, {"t": 2}), (7, 5, {"m": 2, "t": 1}), (7, 2, {"m": 3, "t": 2}),
    (8, 3, {"q": 3}), (8, 5, {"q": 5}), (8, 7, {"q": 7}), (8, 3, {"q": 9}),
    (9, 3, {"q": 3}), (9, 2, {"q": 4}), (9, 5, {"q": 5}),
], ids=lambda x: str(x))
def test_table1_rows(cid, p, kw):
    case = table1_case(cid, p, **kw)
    rep = verify_invariance(case)
    assert rep.ok, rep.to_json()
    assert rep.degree == case.order
    gens = standard_generators(case)
    assert len(mobius_closure(gens)) == case.order
    ram = verify_ramification(case)
    assert ram.status == "confirmed", ram.to_json()


def test_s4_degree():
    assert table1_function(table1_case(4, 13)).degree == 24


def test_invariance_detects_wrong_generator():
    case = table1_case(1, 11, m=5)
    F = coefficient_field(case)
    bad = Mobius.make(F, 1, 1, 0, 1)          # a translation does not fix x^5
    assert not verify_invariance(case, generators=[bad])


@pytest.mark.parametrize("args,exc", [
    ((1, 5, 5), DomainError), ((3, 3, None), DomainError), ((4, 2, None), DomainError),
    ((5, 5, None), DomainError), ((1, 4, 3), ParameterError), ((10, 5, 3), ParameterError),
    ((1, 7, None), ParameterError),
])
def test_table1_parameter_errors(args, exc):
    cid, p, m = args
    with pytest.raises(exc):
        table1_case(cid, p, m=m)


def test_table1_prime_power_errors():
    with pytest.raises(DomainError):
        table1_case(8, 3, q=25)
    with pytest.raises(DomainError):
        table1_case(8, 2, q=4)
    with pytest.raises(DomainError):
        table1_case(7, 5, m=3, t=1)


# -- cyclic curves ----------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.integers(2, 30), st.data())
def test_cyclic_genus_matches_cover_genus(n, data):
    ex = data.draw(st.lists(st.integers(1, n - 1), min_size=2, max_size=8))
    fix = (-sum(ex)) % n
    if fix:
        ex.append(fix)
    g = 0
    for e in ex:
        g = gcd(g, e)
    if g != 1:
        return
    d = CyclicCurveData(n, tuple(ex))
    places = tuple(RamifiedPlace(e=n // gcd(n, e)) for e in ex if n // gcd(n, e) > 1)
    assert cyclic_curve_genus(d) == cover_genus(CoverData(n, 0, places))


def test_cyclic_examples_and_errors():
    assert cyclic_curve_genus(CyclicCurveData(2, (1,) * 8)) == 3       # y^2 = degree 8
    assert cyclic_curve_genus(CyclicCurveData(3, (1,) * 6)) == 4
    assert cyclic_curve_genus(CyclicCurveData(4, (1, 1, 1, 1))) == 3   # y^4 = quartic
    with pytest.raises(UnsupportedError):
        cyclic_curve_genus(CyclicCurveData(3, (1, 1, 1), p=3))
    with pytest.raises(ParameterError):
        CyclicCurveData(4, (2, 2))
    with pytest.raises(ParameterError):
        CyclicCurveData(3, (1, 1))
    with pytest.raises(ParameterError):
        CyclicCurveData(3, (1, 1, 1), points=(0, 0, 1))


# -- characteristic 2 ------------------------------------------------------------------

def odd_types_oracle(g):
    out = set()
    target = 2 * g + 2
    for r in range(1, g + 2):
        for combo in itertools.product(range(1, 2 * g + 2, 2), repeat=r):
            if sum(n + 1 for n in combo) == target:
                out.add(tuple(sorted(combo, reverse=True)))
    return sorted(out)


@pytest.mark.parametrize("g", range(2, 7))
def test_char2_types_oracle(g):
    assert char2_ramification_types(g) == odd_types_oracle(g)


def test_char2_types_genus_3_4():
    assert char2_ramification_types(3) == [(1, 1, 1, 1), (3, 1, 1), (3, 3), (5, 1), (7,)]
    assert len(char2_ramification_types(4)) == 7


def test_char2_groups():
    assert char2_hyperelliptic_groups(3) == ["C2", "C4", "V4", "C2^3", "C6", "C14", "D12"]
    assert len(char2_hyperelliptic_groups(4)) == 7
    with pytest.raises(UnsupportedError):
        char2_hyperelliptic_groups(5)


# -- genus 3 and 4 lists -----------------------------------------------------------------

def test_list_sizes():
    sizes = {(g, p): len(genus34_superelliptic_lists(g, p)) for g in (3, 4) for p in (0, 3, 5, 7)}
    assert sizes == {(3, 0): 26, (3, 3): 18, (3, 5): 25, (3, 7): 25,
                     (4, 0): 29, (4, 3): 22, (4, 5): 28, (4, 7): 29}
    assert genus34_superelliptic_lists(3, 11) == genus34_superelliptic_lists(3, 0)
    with pytest.raises(UnsupportedError):
        genus34_superelliptic_lists(3, 2)
    with pytest.raises(UnsupportedError):
        genus34_superelliptic_lists(5, 0)


def test_pinned_ids_resolve_uniquely(catalog):
    ids = sorted({i for g in (3, 4) for p in (0, 3, 5, 7) for i in genus34_superelliptic_lists(g, p)})
    recs = resolve_gap_ids(ids, catalog)
    unresolved = {tuple(r["id"]) for r in recs if r["status"] == "unresolved"}
    assert unresolved == {(32, 9), (32, 19), (40, 8), (42, 3), (48, 33), (54, 4)}
    resolved = [r for r in recs if r["status"] == "resolved"]
    # distinct GAP ids of one order name distinct groups
    seen = {}
    for r in resolved:
        key = tuple(r["catalog_id"])
        assert key[0] == r["id"][0]
        assert seen.setdefault(key, r["id"]) == r["id"]
    for (o, n), name in gap_id_table().items():
        assert catalog.find(name).order == o


# -- reduced groups ----------------------------------------------------------------------

def test_reduced_examples(catalog):
    assert reduced_group(cyclic(10), 5).name == "C_2"
    assert reduced_group(dihedral(6), 2).name == "D_3"
    assert reduced_group(direct_product(cyclic(2), symmetric(4)), 2).kind == "S4"
    assert reduced_group(catalog.find("SL(2,3)"), 2).kind == "A4"
    assert reduced_group(direct_product(cyclic(3), named_group("A4")), 3).kind == "A4"


def test_reduced_errors():
    with pytest.raises(DomainError):
        reduced_group(cyclic(10), 3)
    with pytest.raises(ParameterError):
        reduced_group(direct_product(cyclic(2), cyclic(2)), 2)     # three central C2's
    with pytest.raises(DomainError):
        reduced_group(dihedral(3), 2, subgroup=[0, 3])
