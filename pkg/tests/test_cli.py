import csv
import io
import json

import jsonschema
import pytest

from curveaut import cli
from curveaut.groups.catalog import data_path

SCHEMA = json.loads((data_path("schema.json")).read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


COMMANDS = [
    ["classify", "--genus", "2", "--orders", "2,5"],
    ["classify", "--genus", "2", "--orders", "10", "--counts", "--maximality"],
    ["maximal", "--group", "C10", "--signature", "0;2,5,10"],
    ["maximal", "--group", "SL(2,3)", "--signature", "0;3,3,4", "--strict"],
    ["count-homs", "--group", "C5", "--signature", "0;5,5,5", "--epi"],
    ["count-homs", "--group", "C10", "--signature", "0;2,5,10", "--method", "brute"],
    ["count-homs", "--group", "PSL(2,7)", "--signature", "0;2,3,7", "--method", "character",
     "--chartable", str(data_path("chartables") / "PSL27.json")],
    ["surfaces", "--group", "C5", "--signature", "0;5,5,5"],
    ["gap-seqs", "--genus", "4", "--weights"],
    ["superelliptic", "table1", "--case", "1", "--p", "11", "--m", "5"],
    ["superelliptic", "verify", "--case", "4", "--p", "13"],
    ["superelliptic", "char2", "--genus", "3"],
    ["superelliptic", "lists", "--genus", "3", "--p", "5", "--resolve"],
    ["bounds", "--genus", "3", "--p", "3"],
    ["catalog", "validate", "--orders", "1,2,3,4,5,6,7,8"],
    ["catalog", "info", "--orders", "6,8"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=" ".join)
def test_json_output_matches_schema(argv):
    code, out, err = call(*argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["command"].split()[0] == argv[0]


def test_counts_in_output():
    doc = json.loads(call("count-homs", "--group", "C5", "--signature", "0;5,5,5", "--epi")[1])
    row = doc["results"][0]
    assert (row["hom_count"], row["epimorphisms"], row["epi_classes"]) == (12, 12, 3)
    assert len(json.loads(call("gap-seqs", "--genus", "4")[1])["results"]) == 7


@pytest.mark.parametrize("argv,code", [
    (["maximal", "--group", "NoSuchGroup", "--signature", "0;2,3,7"], 2),
    (["frobnicate"], 1),
    ([], 1),
    (["classify"], 1),
    (["maximal", "--group", "C5", "--signature", "0;5;5"], 2),
    (["gap-seqs", "--genus", "17"], 3),
    (["catalog"], 1),
])
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    assert out == "" and err.startswith("error")


def test_csv_and_text():
    code, out, _ = call("classify", "--genus", "2", "--orders", "2,5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["group"] for r in rows] == ["C2", "C2", "C5"]
    code, out, _ = call("bounds", "--genus", "2", "--format", "text")
    assert code == 0 and "hurwitz=84" in out


def test_deterministic():
    argv = ["classify", "--genus", "2", "--max-order", "12", "--counts"]
    a, b = call(*argv)[1], call(*argv)[1]
    c = call(*argv, "--workers", "2")[1]
    assert a == b == c


def test_catalog_from_environment(tmp_path, monkeypatch):
    src = (data_path("catalog.jsonl")).read_text().splitlines()
    keep = [line for line in src if json.loads(line).get("order") in (1, 2, 3, 5)]
    path = tmp_path / "small.jsonl"
    path.write_text("\n".join(keep) + "\n")
    monkeypatch.setenv("CURVEAUT_CATALOG", str(path))
    doc = json.loads(call("catalog", "info")[1])
    assert [r["order"] for r in doc["results"]] == [1, 2, 3, 5]
    assert doc["meta"]["path"] == str(path)
    assert call("maximal", "--group", "C10", "--signature", "0;2,5,10")[0] == 2
