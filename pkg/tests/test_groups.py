import itertools
import json
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curveaut.errors import ParameterError, ParseError, ResourceError, UnsupportedError, ValidationError
from curveaut.groups.catalog import catalog_load, catalog_validate, data_path
from curveaut.groups.characters import abelian_character_table, load_character_table, table_matches_group
from curveaut.groups.construct import (abelian, construct_standard, cyclic, dicyclic, dihedral, direct_product,
                                       semidirect, symmetric)
from curveaut.groups.cyclotomic import Cyclotomic
from curveaut.groups.group import (FiniteGroup, all_subgroups, check_axioms, conjugacy_classes,
                                   subgroups_up_to_conjugacy)
from curveaut.groups.morphisms import automorphism_group_order, is_isomorphic
from curveaut.groups.presentations import construct_presented_th14


# -- oracles ---------------------------------------------------------------

def brute_classes(G):
    n = G.order
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        orb = {G.op(G.op(G.inv(g), x), g) for g in range(n)}
        seen |= orb
        out.append(orb)
    return out


def brute_aut_order(G):
    n = G.order
    m = G.mul
    count = 0
    for perm in itertools.permutations(range(1, n)):
        phi = np.array((0,) + perm)
        if np.array_equal(phi[m], m[phi[:, None], phi[None, :]]):
            count += 1
    return count


def brute_subgroups(G):
    n = G.order
    out = []
    for r in range(n):
        for rest in itertools.combinations(range(1, n), r):
            s = (0,) + rest
            if all(G.op(a, b) in s for a in s for b in s):
                out.append(frozenset(s))
    return out


def phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


# -- construction ----------------------------------------------------------

def test_cyclic_five():
    G = construct_standard("cyclic", 5)
    assert G.order == 5
    assert len(conjugacy_classes(G).sizes) == 5


def test_dihedral_label_and_order():
    G = construct_standard("dihedral", 6)
    assert G.order == 12
    assert G.label == "D12"
    assert not G.is_abelian


def test_semidirect_21_is_nonabelian_and_not_cyclic():
    G = semidirect(7, 2, 3)
    assert G.order == 21 and not G.is_abelian
    assert not is_isomorphic(G, cyclic(21))


def test_semidirect_bad_action():
    with pytest.raises(ParameterError):
        semidirect(7, 3, 3)       # 3^3 = 27 != 1 mod 7
    with pytest.raises(ParameterError):
        semidirect(8, 2, 2)       # gcd(2, 8) != 1


def test_standard_orders():
    assert abelian([2, 2]).order == 4
    assert symmetric(4).order == 24
    assert construct_standard("alternating", 5).order == 60
    assert dicyclic(2).order == 8
    assert direct_product(cyclic(2), cyclic(3)).order == 6
    with pytest.raises(ParameterError):
        construct_standard("nonsense", 3)


def test_axiom_scan_rejects_bad_table():
    bad = np.array([[0, 1, 2], [1, 0, 0], [2, 2, 1]])
    with pytest.raises(ValidationError):
        FiniteGroup(bad)


@pytest.mark.parametrize("G", [cyclic(12), dihedral(5), symmetric(4), abelian([2, 4]), dicyclic(3)],
                         ids=lambda G: G.label)
def test_axioms_and_element_orders(G):
    assert check_axioms(G)
    assert G.element_order[0] == 1
    for x in range(G.order):
        k, y = 1, x
        while y != 0:
            y = G.op(y, x)
            k += 1
        assert G.element_order[x] == k


# -- presentations -----------------------------------------------------------

def test_presented_cyclic():
    G = construct_presented_th14("cyclic", n=4, m=3)
    assert G.order == 12 and is_isomorphic(G, cyclic(12))


def test_presented_g6_is_dihedral():
    G = construct_presented_th14("G6", n=2, m=3)
    assert G.order == 12 and is_isomorphic(G, dihedral(6))


def test_presented_metacyclic_matches_semidirect():
    G = construct_presented_th14("metacyclic", n=7, m=3, l=2)
    assert is_isomorphic(G, semidirect(7, 2, 3))


def test_presented_bad_congruence():
    with pytest.raises(ParameterError):
        construct_presented_th14("metacyclic", n=7, m=3, l=3)
    with pytest.raises(ParameterError):
        construct_presented_th14("no-such-case", n=2)


# -- classes, automorphisms, subgroups ------------------------------------

@pytest.mark.parametrize("G,count", [(cyclic(5), 5), (dihedral(3), 3), (dihedral(4), 5)],
                         ids=["C5", "S3", "D8"])
def test_class_counts(G, count):
    cl = conjugacy_classes(G)
    assert len(cl.sizes) == count
    assert sorted(map(sorted, brute_classes(G))) == sorted(sorted(cl.members(k)) for k in range(len(cl.sizes)))


def test_s3_class_sizes():
    assert sorted(conjugacy_classes(dihedral(3)).sizes) == [1, 2, 3]


@pytest.mark.parametrize("G,n", [(cyclic(5), 4), (cyclic(10), 4), (abelian([2, 2]), 6)],
                         ids=["C5", "C10", "V4"])
def test_automorphism_orders(G, n):
    order, auts = automorphism_group_order(G)
    assert order == n == brute_aut_order(G)
    for a in auts:
        assert np.array_equal(a[G.mul], G.mul[a[:, None], a[None, :]])
        assert np.unique(a).size == G.order


def test_automorphism_cap():
    with pytest.raises(ResourceError):
        automorphism_group_order(cyclic(20), cap=10)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 50))
def test_aut_cyclic_is_euler_phi(n):
    assert automorphism_group_order(cyclic(n))[0] == phi(n)


def test_subgroups_small():
    assert [i for _, i in subgroups_up_to_conjugacy(cyclic(5))] == [5, 1]
    assert sorted(len(s) for s, _ in subgroups_up_to_conjugacy(cyclic(10))) == [1, 2, 5, 10]
    D8 = dihedral(4)
    assert len(subgroups_up_to_conjugacy(D8)) == 8
    assert len(all_subgroups(D8)) == len(brute_subgroups(D8)) == 10


def test_subgroups_closed():
    G = symmetric(4)
    for els, idx in subgroups_up_to_conjugacy(G):
        assert G.is_subgroup(list(els))
        assert idx * len(els) == 24
    assert len(subgroups_up_to_conjugacy(G)) == 11


# -- isomorphism -------------------------------------------------------------

def test_isomorphism_examples():
    assert not is_isomorphic(cyclic(4), abelian([2, 2]))
    assert not is_isomorphic(dihedral(6), abelian([2, 6]))
    assert is_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6))


def test_isomorphism_is_equivalence():
    gs = [cyclic(8), abelian([2, 4]), dihedral(4), dicyclic(2), direct_product(cyclic(4), cyclic(2))]
    rel = [[is_isomorphic(a, b) for b in gs] for a in gs]
    for i in range(len(gs)):
        assert rel[i][i]
        for j in range(len(gs)):
            assert rel[i][j] == rel[j][i]
            for k in range(len(gs)):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


# -- characters ----------------------------------------------------------------

def test_cyclotomic_arithmetic():
    z = Cyclotomic.zeta(3)
    assert z * z * z == 1
    assert (1 + z + z * z) == 0
    assert (z * z.conj()) == 1


def test_character_table_c2():
    t = abelian_character_table(cyclic(2))
    assert sorted(tuple(v.to_int() for v in row) for row in t.values) == [(1, -1), (1, 1)]


def test_character_tables_abelian():
    for G in (cyclic(3), abelian([2, 2]), abelian([2, 6]), cyclic(12)):
        t = abelian_character_table(G)
        assert len(t) == G.order
        assert t.orthogonality_defect() == []
        assert t.column_orthogonality_defect() == []
    t = abelian_character_table(abelian([2, 2]))
    assert all(v.to_int() in (1, -1) for row in t.values for v in row)


def test_character_table_nonabelian_rejected():
    with pytest.raises(UnsupportedError):
        abelian_character_table(dihedral(3))


def test_ingested_tables(catalog):
    for name, group in (("S3.json", "S3"), ("PSL27.json", "PSL(2,7)")):
        t = load_character_table(data_path("chartables") / name)
        assert t.orthogonality_defect() == []
        assert table_matches_group(t, catalog.find(group))


# -- catalog -------------------------------------------------------------------

def test_bundled_catalog_order6(catalog):
    assert sorted(G.label for G in catalog.groups(6)) == ["C6", "S3"]
    assert catalog.is_complete(6)


def test_bundled_catalog_validates_small_orders(catalog):
    rep = catalog_validate(catalog, orders=range(1, 33))
    assert rep["ok"]
    by = {r["order"]: r for r in rep["orders"]}
    assert by[21]["entries"] == 2 and by[21]["complete"]
    assert by[16]["entries"] == 14


def test_catalog_incomplete_orders(catalog):
    for n in (72, 96, 120, 168):
        assert n in catalog.orders() and not catalog.is_complete(n)


def test_catalog_find_selectors(catalog):
    assert catalog.find("V4").order == 4
    assert catalog.find("gap:4,2").label == catalog.find("V4").label
    assert catalog.find("10:1").label == "C10"
    with pytest.raises(ValidationError):
        catalog.find("99:1")


def _write(tmp_path, lines):
    p = tmp_path / "cat.jsonl"
    p.write_text("\n".join(json.dumps(x) if isinstance(x, dict) else x for x in lines) + "\n")
    return p


def test_catalog_parse_error_has_line_number(tmp_path):
    good = {"order": 2, "index": 1, "label": "C2", "generators": [[1, 0]], "complete_order": True, "source": "t"}
    p = _write(tmp_path, [good, "{not json"])
    with pytest.raises(ParseError) as exc:
        catalog_load(p)
    assert "line 2" in str(exc.value)


def test_catalog_count_mismatch(tmp_path):
    c4 = {"order": 4, "index": 1, "label": "C4", "generators": [[1, 2, 3, 0]], "complete_order": True,
          "source": "t"}
    cat = catalog_load(_write(tmp_path, [c4]))
    with pytest.raises(ValidationError):
        catalog_validate(cat)
    c4["complete_order"] = False
    assert catalog_validate(catalog_load(_write(tmp_path, [c4])))["ok"]


def test_catalog_order21_complete(tmp_path):
    c21 = {"order": 21, "index": 1, "label": "C21",
           "generators": [list(range(1, 21)) + [0]], "complete_order": True, "source": "t"}
    # x -> 2x on Z/7 together with translation, acting on 7 points
    meta = {"order": 21, "index": 2, "label": "C7:C3",
            "generators": [[1, 2, 3, 4, 5, 6, 0], [0, 2, 4, 6, 1, 3, 5]], "complete_order": True, "source": "t"}
    assert catalog_validate(catalog_load(_write(tmp_path, [c21, meta])))["ok"]
    dup = dict(meta, index=3, label="dup")
    with pytest.raises(ValidationError):
        catalog_validate(catalog_load(_write(tmp_path, [c21, meta, dup])))


def test_catalog_non_group_generators(tmp_path):
    bad = {"order": 3, "index": 1, "label": "X", "generators": [[1, 0, 2]], "complete_order": False,
           "source": "t"}
    with pytest.raises((ValidationError, ParseError)):
        catalog_validate(catalog_load(_write(tmp_path, [bad])))


def test_class_sizes_divide_order(catalog):
    for n in range(1, 25):
        for G in catalog.groups(n):
            sizes = conjugacy_classes(G).sizes
            assert sum(sizes) == n and all(n % s == 0 for s in sizes)
