"""Write the bundled nonabelian character tables.

The tables of S3 and PSL(2,7) are entered from their standard descriptions,
converted to cyclotomic coefficient vectors, checked for exact row and column
orthogonality and matched against the class data of the catalog group before
being written.

Usage: python tools/make_chartables.py
"""
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from curveaut.groups.catalog import bundled_catalog  # noqa: E402
from curveaut.groups.characters import CharacterTable, table_matches_group, table_to_json  # noqa: E402
from curveaut.groups.cyclotomic import Cyclotomic  # noqa: E402

OUT = ROOT / "src/curveaut/data/chartables"


def s3_table():
    N = 6
    one = Cyclotomic.integer(N, 1)

    def i(v):
        return one * v
    rows = [[i(1), i(1), i(1)], [i(1), i(-1), i(1)], [i(2), i(0), i(-1)]]
    return N, [(1, 1), (2, 3), (3, 2)], rows


def psl27_table():
    N = 84
    z7 = [Cyclotomic.zeta(N, 12 * k) for k in range(7)]
    b7 = z7[1] + z7[2] + z7[4]
    b7c = b7.conj()

    def i(v):
        return Cyclotomic.integer(N, v)
    classes = [(1, 1), (2, 21), (3, 56), (4, 42), (7, 24), (7, 24)]
    rows = [
        [i(1), i(1), i(1), i(1), i(1), i(1)],
        [i(3), i(-1), i(0), i(1), b7, b7c],
        [i(3), i(-1), i(0), i(1), b7c, b7],
        [i(6), i(2), i(0), i(0), i(-1), i(-1)],
        [i(7), i(-1), i(1), i(-1), i(0), i(0)],
        [i(8), i(0), i(-1), i(0), i(1), i(1)],
    ]
    return N, classes, rows


def build(name, data, label):
    N, classes, rows = data
    cat = bundled_catalog()
    G = cat.find(label)
    t = CharacterTable(exponent=N, values=tuple(tuple(r) for r in rows),
                       degrees=tuple(r[0].to_int() for r in rows),
                       class_orders=tuple(c[0] for c in classes), class_sizes=tuple(c[1] for c in classes),
                       group_order=sum(c[1] for c in classes), group_id=G.catalog_id)
    t.validate()
    assert not t.column_orthogonality_defect(), name
    assert table_matches_group(t, G), name
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / f"{name}.json").write_text(json.dumps(table_to_json(t)) + "\n")
    print(f"wrote {name}.json for catalog entry {G.catalog_id}")


if __name__ == "__main__":
    build("S3", s3_table(), "S3")
    build("PSL27", psl27_table(), "PSL(2,7)")
