import itertools
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curveaut.errors import DomainError, ParameterError
from curveaut.groups.construct import abelian, cyclic, dihedral
from curveaut.groups.group import coset_action
from curveaut.maximality import (Extends, Verdict, braid_move, cond1_test, cond2_test, cyclic_family_exponents,
                                 eval_constraint, extension_search, fuse_surface_count, load_singerman_table,
                                 maximality_verdict, reorder_triangle, singerman_overgroups, subgroup_signature,
                                 subgroup_signature_from_permutations, superelliptic_nonmax_matches,
                                 superelliptic_nonmax_tables)
from curveaut.search import (GeneratingVector, classify, count_epimorphism_classes, find_generating_vector,
                             iter_generating_vectors)
from curveaut.signatures import Signature


def S(text):
    return Signature.parse(text)


# -- the inclusion table ---------------------------------------------------------

# written out independently of the data file: (case, params, guard, inner, outer, index)
TABLE = [
    ("N1", "", lambda: True, lambda: (2, ()), lambda: (0, (2,) * 6), 2),
    ("N2", "t", lambda t: True, lambda t: (1, (t, t)), lambda t: (0, (2, 2, 2, 2, t)), 2),
    ("N3", "t", lambda t: True, lambda t: (1, (t,)), lambda t: (0, (2, 2, 2, 2 * t)), 2),
    ("N4", "t", lambda t: t >= 3, lambda t: (0, (t,) * 4), lambda t: (0, (2, 2, 2, t)), 4),
    ("N5", "tu", lambda t, u: t + u >= 5, lambda t, u: (0, (t, t, u, u)), lambda t, u: (0, (2, 2, t, u)), 2),
    ("N6", "t", lambda t: t >= 4, lambda t: (0, (t,) * 3), lambda t: (0, (3, 3, t)), 3),
    ("N7", "t", lambda t: t >= 4, lambda t: (0, (t,) * 3), lambda t: (0, (2, 3, 2 * t)), 6),
    ("N8", "tu", lambda t, u: t >= 3 and t + u >= 7, lambda t, u: (0, (t, t, u)), lambda t, u: (0, (2, t, 2 * u)), 2),
    ("T1", "", lambda: True, lambda: (0, (7, 7, 7)), lambda: (0, (2, 3, 7)), 24),
    ("T2", "", lambda: True, lambda: (0, (2, 7, 7)), lambda: (0, (2, 3, 7)), 9),
    ("T3", "", lambda: True, lambda: (0, (3, 3, 7)), lambda: (0, (2, 3, 7)), 8),
    ("T4", "", lambda: True, lambda: (0, (4, 8, 8)), lambda: (0, (2, 3, 8)), 12),
    ("T5", "", lambda: True, lambda: (0, (3, 8, 8)), lambda: (0, (2, 3, 8)), 10),
    ("T6", "", lambda: True, lambda: (0, (9, 9, 9)), lambda: (0, (2, 3, 9)), 12),
    ("T7", "", lambda: True, lambda: (0, (4, 4, 5)), lambda: (0, (2, 4, 5)), 6),
    ("T8", "n", lambda n: n >= 2, lambda n: (0, (n, 4 * n, 4 * n)), lambda n: (0, (2, 3, 4 * n)), 6),
    ("T9", "n", lambda n: n >= 3, lambda n: (0, (n, 2 * n, 2 * n)), lambda n: (0, (2, 4, 2 * n)), 4),
    ("T10", "n", lambda n: n >= 3, lambda n: (0, (3, n, 3 * n)), lambda n: (0, (2, 3, 3 * n)), 4),
    ("T11", "n", lambda n: n >= 4, lambda n: (0, (2, n, 2 * n)), lambda n: (0, (2, 3, 2 * n)), 3),
]


def oracle_index(limit):
    """inner signature -> set of (case, outer, index), parameters in 2..limit."""
    out = {}
    for case, params, guard, inner, outer, idx in TABLE:
        for vals in itertools.product(range(2, limit + 1), repeat=len(params)):
            if not guard(*vals):
                continue
            gi, pi = inner(*vals)
            go, po = outer(*vals)
            key = Signature(gi, pi)
            out.setdefault(key, set()).add((case, Signature(go, po), idx))
    return out


def test_examples():
    got = {(o.rule.case_id, str(o.outer), o.index) for o in singerman_overgroups(S("0;5,5,5"))}
    assert got == {("N6", "0;3,3,5", 3), ("N7", "0;2,3,10", 6), ("N8", "0;2,5,10", 2)}
    assert singerman_overgroups(S("0;2,3,7")) == []
    assert [(o.rule.case_id, str(o.outer), o.index) for o in singerman_overgroups(S("2;-"))] == \
        [("N1", "0;2,2,2,2,2,2", 2)]


def test_table_matches_oracle():
    limit = 20
    oracle = oracle_index(limit)
    count = 0
    for g0 in range(3):
        for r in range(5):
            for ps in itertools.combinations_with_replacement(range(2, limit + 1), r):
                s = Signature(g0, ps)
                got = {(o.rule.case_id, o.outer, o.index) for o in singerman_overgroups(s)}
                assert got == oracle.get(s, set()), s
                count += 1
    assert count > 10000


def test_rule_index_consistency():
    # area(inner) = index * area(outer) for every rule, parameters up to 12
    for rule in load_singerman_table():
        names = rule.inner.variables
        for vals in itertools.product(range(2, 13), repeat=len(names)):
            b = dict(zip(names, vals))
            if not rule.admits(b):
                continue
            inner, outer = rule.inner.instantiate(b), rule.outer.instantiate(b)
            assert inner.area() == rule.index * outer.area(), (rule.case_id, b)
            assert rule.normal == rule.case_id.startswith("N")


def test_constraints():
    assert eval_constraint("t+u>=7", {"t": 3, "u": 4})
    assert not eval_constraint("t>=3", {"t": 2})
    with pytest.raises(Exception):
        eval_constraint("__import__('os')", {})


# -- cond1 -------------------------------------------------------------------------

def brute_extends(G, gens, images):
    """Does c_i -> image_i define an automorphism?  Walk the Cayley graph."""
    phi = {0: 0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, h in zip(gens, images):
            y, fy = G.op(x, g), G.op(phi[x], h)
            if y in phi:
                if phi[y] != fy:
                    return False
            else:
                phi[y] = fy
                frontier.append(y)
    return len(phi) == G.order and len(set(phi.values())) == G.order


def test_cond1_c2_genus_one():
    G = cyclic(2)
    v = GeneratingVector(G, 1, (2, 2), (1, 1), (1, 1))
    assert cond1_test(v).verdict is Extends.EXTENDS


def test_cond1_abelian_identity_assignment():
    G = cyclic(6)
    v = GeneratingVector(G, 0, (3, 3, 6, 6), (), (2, 2, 1, 1))
    assert v.is_valid()
    res = cond1_test(v)
    assert res.verdict is Extends.EXTENDS and res.case == "4"


def test_cond1_against_cayley_oracle():
    seen = set()
    for G, s in ((dihedral(3), "0;2,2,3,3"), (dihedral(4), "0;2,2,4,4"), (dihedral(5), "0;2,2,5,5"),
                 (dihedral(6), "0;2,2,3,3")):
        for v in itertools.islice(iter_generating_vectors(G, S(s), periods=(2, 2) + S(s).periods[2:],
                                                          canonical=False), 200):
            c1, c2, c3, c4 = v.elliptic
            img = (c2, c1, G.op(G.op(G.inv(c1), c4), c1), G.op(G.op(c2, c3), G.inv(c2)))
            want = brute_extends(G, v.elliptic, img)
            got = cond1_test(v).verdict is Extends.EXTENDS
            assert got == want
            seen.add(want)
    assert seen == {True, False}


def test_cond1_shape_errors():
    v = find_generating_vector(cyclic(5), S("0;5,5,5"))
    with pytest.raises(DomainError):
        cond1_test(v)


# -- cond2 -------------------------------------------------------------------------

def test_cond2_c5():
    v = GeneratingVector(cyclic(5), 0, (5, 5, 5), (), (1, 1, 3))
    res = cond2_test(v)
    assert res.verdict is Extends.EXTENDS and res.case == "2"


def test_cond2_non_triangle():
    v = GeneratingVector(cyclic(2), 1, (2, 2), (1, 1), (1, 1))
    with pytest.raises(DomainError):
        cond2_test(v)


def test_cond2_rotation_against_oracle():
    seen = set()
    for G, text in ((cyclic(7), "0;7,7,7"), (cyclic(9), "0;9,9,9"), (abelian([3, 3]), "0;3,3,3")):
        for v in iter_generating_vectors(G, S(text), canonical=False):
            c1, c2, c3 = v.elliptic
            case1 = [c for c in cond2_test(v).cases if c.case == "1"]
            if not case1:       # (0;3,3,3) is below the rotation case's range
                continue
            want = brute_extends(G, (c1, c2, c3), (c2, c3, c1))
            assert (case1[0].verdict is Extends.EXTENDS) == want
            seen.add(want)
    assert seen == {True, False}


@pytest.mark.parametrize("N", range(4, 101))
def test_cond2_cyclic_congruence(N):
    # for every n | N with m = N/n >= 2: the swap case extends iff a^2 = 1 mod N
    G = cyclic(N)
    for n in range(2, N):
        if N % n or N // n < 2:
            continue
        m = N // n
        for a in cyclic_family_exponents(n, m):
            v = GeneratingVector(G, 0, (N, N, n), (), (1, a, (N - a - 1) % N))
            assert v.is_valid()
            res = cond2_test(v)
            swap = [c for c in res.cases if c.case == "2"]
            if N + n < 7:
                assert not swap
                continue
            assert swap
            assert (swap[0].verdict is Extends.EXTENDS) == (a * a % N == 1), (n, m, a)


def test_braid_moves_keep_product():
    G = dihedral(5)
    v = find_generating_vector(G, S("0;2,2,5,5"))
    for k in range(3):
        assert braid_move(v, k).is_valid()
    v3 = find_generating_vector(cyclic(10), S("0;2,5,10"))
    for order in itertools.permutations((2, 5, 10)):
        w = reorder_triangle(v3, order)
        assert w.is_valid() and tuple(w.periods) == order
    with pytest.raises(ParameterError):
        reorder_triangle(v3, (2, 2, 10))


# -- subgroup signatures -------------------------------------------------------------

def test_subgroup_signature_index_two():
    G = cyclic(10)
    outer = S("0;2,5,10")
    w = find_generating_vector(G, outer)
    H = [x for x in range(10) if G.element_order[x] in (1, 5)]
    assert subgroup_signature(outer, G, w.entries, coset_action(G, H), periods=w.periods) == S("0;5,5,5")
    # the trivial action returns the outer signature
    assert subgroup_signature(outer, G, w.entries, list(range(10)), periods=w.periods) == outer


def test_subgroup_signature_n4():
    # C2 x C2 acting regularly on 4 points: three involutions and the identity
    a, b, ab, e = [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0], [0, 1, 2, 3]
    for t in range(3, 10):
        assert subgroup_signature_from_permutations(0, (2, 2, 2, t), [a, b, ab, e]) == Signature(0, (t,) * 4)


def test_subgroup_signature_intransitive():
    with pytest.raises(DomainError):
        subgroup_signature_from_permutations(0, (2, 2, 2), [[1, 0, 2, 3]] * 3)


# -- extension search and verdicts --------------------------------------------------

def test_extension_search_c5(catalog):
    res = extension_search(cyclic(5), S("0;5,5,5"), catalog)
    w = res.witness
    assert w.overgroup.label == "C10" and w.outer_signature == S("0;2,5,10")
    assert not res.relative


def test_extension_search_klein(catalog):
    res = extension_search(catalog.find("PSL(2,7)"), S("0;2,3,7"), catalog)
    assert res.witness is None and res.trace == []


def test_extension_cyclic_family(catalog):
    G = catalog.find("C40")
    s = S("0;4,40,40")
    for v in iter_generating_vectors(G, s, periods=(40, 40, 4), canonical=False):
        assert cond2_test(v, catalog).verdict is Extends.EXTENDS
    # the overgroup order 80 is outside the catalog: the search answer is relative
    res = extension_search(G, s, catalog)
    assert res.witness is None and res.relative and res.missing_orders == [80]


def test_extension_witnesses_sound(catalog):
    recs = classify(2, catalog, max_order=24)
    checked = 0
    for r in recs:
        G = catalog.get(*r.catalog_id)
        if not singerman_overgroups(r.signature):
            continue
        res = extension_search(G, r.signature, catalog)
        if res.witness is None:
            continue
        w = res.witness
        act = coset_action(w.overgroup, list(w.subgroup))
        inner = subgroup_signature(w.outer_signature, w.overgroup, w.outer_vector.entries, act,
                                   periods=w.outer_vector.periods)
        assert inner == r.signature
        inc = w.inclusion
        assert np.array_equal(w.overgroup.mul[inc[:, None], inc[None, :]], inc[G.mul])
        assert w.overgroup.order == w.rule.index * G.order
        checked += 1
    assert checked >= 5


def test_verdicts(catalog):
    assert maximality_verdict(cyclic(5), S("0;5,5,5"), catalog).verdict is Verdict.NEVER_MAXIMAL
    assert maximality_verdict(catalog.find("PSL(2,7)"), S("0;2,3,7")).verdict is Verdict.MAXIMAL_WITNESS
    assert maximality_verdict(cyclic(64), S("0;8,64,64")).verdict is Verdict.MAXIMAL_WITNESS
    with pytest.raises(DomainError):
        maximality_verdict(cyclic(4), S("0;5,5,5"))


def test_strict_thresholds(catalog):
    # SL(2,3) on genus 2 with (0;3,3,4) extends to GL(2,3) with (0;2,3,8) under the table's thresholds
    G = catalog.find("SL(2,3)")
    s = S("0;3,3,4")
    assert maximality_verdict(G, s, catalog).verdict is Verdict.NEVER_MAXIMAL
    assert maximality_verdict(G, s, catalog, strict=True).verdict is Verdict.MAXIMAL_WITNESS


# -- surface counts ---------------------------------------------------------------

def test_fusion_examples(catalog):
    r = fuse_surface_count(cyclic(5), S("0;5,5,5"), catalog)
    assert r.exact and r.count == 1 and r.class_count == 3
    r = fuse_surface_count(cyclic(10), S("0;2,5,10"), catalog)
    assert r.exact and r.count == 1
    with pytest.raises(DomainError):
        fuse_surface_count(cyclic(2), S("1;2,2"))


def test_fusion_bounds(catalog):
    for r in classify(3, catalog, max_order=48):
        if r.signature.orbit_genus or r.signature.r != 3:
            continue
        G = catalog.get(*r.catalog_id)
        c = count_epimorphism_classes(G, r.signature)
        f = fuse_surface_count(G, r.signature, catalog, class_count=c)
        lo, hi = f.bounds
        assert 1 <= lo <= hi <= c
        if f.exact:
            assert f.count == lo == hi


# -- superelliptic tables -----------------------------------------------------------

def test_superelliptic_tables():
    assert superelliptic_nonmax_tables("C_m", S("0;12,12,3"), m=4) == ("D_4", S("0;2,12,6"))
    assert superelliptic_nonmax_tables("A4", S("0;6,3,3")) == ("S4", S("0;2,3,12"))
    assert superelliptic_nonmax_tables("S4", S("0;2,3,8")) is None
    assert superelliptic_nonmax_tables("A5", S("0;2,3,5")) is None
    with pytest.raises(ParameterError):
        superelliptic_nonmax_tables("C_m", S("0;4,4,2"))
    with pytest.raises(ParameterError):
        superelliptic_nonmax_tables("Q8", S("0;4,4,2"))


REDUCED_ORDER = {"C": lambda m: m, "D": lambda m: 2 * m, "A4": lambda m: 12, "S4": lambda m: 24}


def _reduced_order(label, m):
    if label.startswith(("C_", "D_")):
        k = int(label[2:])
        return k if label[0] == "C" else 2 * k
    return REDUCED_ORDER[label](m)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["C_m", "D_m", "A4"]), st.integers(2, 12), st.integers(2, 12), st.data())
def test_superelliptic_rows_respect_index(kind, m, n, data):
    # every hit satisfies area(inner) = [K':K] area(outer)
    rows = ["0;{a},{a},{b},{b}", "0;{a},{a},{b}", "0;2,{a},{b}", "0;3,{a},{b}", "0;{a},{b},{b}"]
    a, b = m * data.draw(st.integers(1, 3)), n
    sig = Signature.parse(data.draw(st.sampled_from(rows)).format(a=a, b=b))
    for h in superelliptic_nonmax_matches(kind, sig, m=m if kind != "A4" else None):
        k = _reduced_order(h.outer_reduced, m) // _reduced_order(h.reduced, m)
        assert h.inner.area() == k * h.outer.area(), h


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(2, 12))
def test_superelliptic_cyclic_family_row(m, n):
    hits = superelliptic_nonmax_matches("C_m", Signature(0, (m * n, m * n, n)), m=m)
    assert any(h.outer == Signature(0, (2, m * n, 2 * n)) and h.outer_reduced == f"D_{m}" for h in hits)
