"""Generating vectors: existence search, homomorphism counting, classification.

A (g0; m_1..m_r)-generating vector of G is (a_1, b_1, ..., a_g0, b_g0,
c_1, ..., c_r) with ord(c_j) = m_j, [a_1,b_1]...[a_g0,b_g0] c_1...c_r = 1 and
the entries generating G, where [a, b] = a b a^-1 b^-1.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .errors import InconsistencyError, ParameterError, ResourceError
from .groups.catalog import GroupCatalog, catalog_load
from .groups.cyclotomic import Cyclotomic
from .groups.group import FiniteGroup, all_subgroups
from .groups.morphisms import automorphism_group_order
from .signatures import Signature, enumerate_signatures, format_signature, hurwitz_bound, rh_genus

DEFAULT_NODE_CAP = 10 ** 8


class SearchBudgetExceeded(ResourceError):
    """The node cap was hit before the search finished: the answer is undecided."""


@dataclass(frozen=True)
class GeneratingVector:
    group: FiniteGroup = field(repr=False, compare=False)
    orbit_genus: int
    periods: tuple          # in the order matched by the elliptic entries
    hyperbolic: tuple       # a_1, b_1, ..., a_g0, b_g0
    elliptic: tuple         # c_1, ..., c_r

    @property
    def signature(self):
        return Signature(self.orbit_genus, self.periods)

    @property
    def entries(self):
        return tuple(self.hyperbolic) + tuple(self.elliptic)

    def long_relation(self):
        G = self.group
        x = 0
        h = self.hyperbolic
        for i in range(0, len(h), 2):
            x = G.op(x, G.commutator(h[i], h[i + 1]))
        for c in self.elliptic:
            x = G.op(x, c)
        return x

    def defects(self):
        """List of violated invariants (empty for a valid vector)."""
        G = self.group
        bad = []
        if len(self.hyperbolic) != 2 * self.orbit_genus or len(self.elliptic) != len(self.periods):
            bad.append("entry counts do not match the signature")
            return bad
        for j, (c, m) in enumerate(zip(self.elliptic, self.periods)):
            if int(G.element_order[c]) != m:
                bad.append(f"c_{j + 1} has order {int(G.element_order[c])}, expected {m}")
        if self.long_relation() != 0:
            bad.append("long relation fails")
        if not G.generates(list(self.entries)):
            bad.append("entries do not generate the group")
        return bad

    def is_valid(self):
        return not self.defects()

    def to_json(self):
        h = [int(x) for x in self.hyperbolic]
        return {"a": h[0::2], "b": h[1::2], "c": [int(x) for x in self.elliptic]}


def _feasible_masks(G, periods):
    """back[j]: mask of possible products c_j ... c_{r-1} with the given orders."""
    n = G.order
    eo = G.element_order
    back = [None] * (len(periods) + 1)
    last = np.zeros(n, dtype=bool)
    last[0] = True
    back[len(periods)] = last
    for j in range(len(periods) - 1, -1, -1):
        els = np.flatnonzero(eo == periods[j])
        nxt = np.flatnonzero(back[j + 1])
        mk = np.zeros(n, dtype=bool)
        mk[G.mul[np.ix_(els, nxt)].ravel()] = True
        back[j] = mk
    return back


def commutator_table(G, elements=None):
    """[a, b] for all a, b in ``elements`` (default: all of G) as a matrix."""
    els = np.arange(G.order) if elements is None else np.asarray(elements)
    m, iv = G.mul, G.inverse
    ab = m[np.ix_(els, els)]
    return m[m[ab, iv[els][:, None]], iv[els][None, :]]


def iter_generating_vectors(G, sig, periods=None, canonical=True, node_cap=DEFAULT_NODE_CAP):
    """Yield generating vectors of G with signature ``sig``.

    With ``canonical`` the first entry runs over conjugacy-class
    representatives only, so every vector is produced up to simultaneous
    conjugation; without it every vector is produced.  Partial products are
    pruned with the exact set of products reachable by the remaining entries.
    Raises SearchBudgetExceeded when more than ``node_cap`` candidates are
    examined.  Only Fuchsian signatures (positive area) yield anything.
    """
    periods = tuple(sig.periods) if periods is None else tuple(periods)
    if sorted(periods) != list(sig.periods):
        raise ParameterError("periods must be a reordering of the signature periods")
    g0 = sig.orbit_genus
    if sig.area() <= 0:
        # spherical and euclidean signatures are not Fuchsian
        return
    eo = G.element_order
    present = set(int(x) for x in eo)
    if any(m not in present for m in periods):
        return
    m, iv = G.mul, G.inverse
    n = G.order
    back = _feasible_masks(G, periods)
    hfeas = [None] * (g0 + 1)
    hfeas[g0] = back[0]
    if g0:
        comm_vals = np.unique(commutator_table(G))
        for i in range(g0 - 1, -1, -1):
            nxt = np.flatnonzero(hfeas[i + 1])
            mk = np.zeros(n, dtype=bool)
            mk[m[np.ix_(comm_vals, nxt)].ravel()] = True
            hfeas[i] = mk
    if not hfeas[0][0]:
        return
    reps = np.asarray(G.classes.representatives)
    by_order = {p: np.flatnonzero(eo == p) for p in set(periods)}
    allel = np.arange(n)
    nodes = 0
    chosen = []

    def tick(k):
        nonlocal nodes
        nodes += k
        if nodes > node_cap:
            raise SearchBudgetExceeded(f"generating-vector search exceeded the node cap {node_cap}")

    def elliptic(j, P):
        if j == len(periods):
            if P == 0 and G.generates(chosen):
                yield tuple(chosen)
            return
        cand = by_order[periods[j]]
        if canonical and j == 0 and g0 == 0:
            cand = cand[np.isin(cand, reps)]
        tick(cand.size)
        newP = m[P, cand]
        ok = back[j + 1][iv[newP]]
        for c, p2 in zip(cand[ok], newP[ok]):
            chosen.append(int(c))
            yield from elliptic(j + 1, int(p2))
            chosen.pop()

    def hyperbolic(i, P):
        if i == g0:
            yield from elliptic(0, P)
            return
        acand = reps if (canonical and i == 0) else allel
        for a in acand:
            tick(n)
            a = int(a)
            comm = m[m[m[a, allel], iv[a]], iv[allel]]
            newP = m[P, comm]
            ok = hfeas[i + 1][iv[newP]]
            for b, p2 in zip(allel[ok], newP[ok]):
                chosen.extend((a, int(b)))
                yield from hyperbolic(i + 1, int(p2))
                del chosen[-2:]

    for entries in hyperbolic(0, 0):
        yield GeneratingVector(G, g0, periods, entries[: 2 * g0], entries[2 * g0:])


def find_generating_vector(G, sig, periods=None, node_cap=DEFAULT_NODE_CAP):
    """A generating vector of G with signature ``sig``, or None if none exists.

    The search is exhaustive (up to conjugation of the whole vector), so
    None is a definitive answer; hitting the node cap raises
    SearchBudgetExceeded instead.
    """
    for v in iter_generating_vectors(G, sig, periods, node_cap=node_cap):
        return v
    return None


def vector_classes(G, sig, periods=None, auts=None, node_cap=DEFAULT_NODE_CAP):
    """One generating vector per Aut(G)-orbit (epimorphism class), in search order."""
    if auts is None:
        from .groups.morphisms import automorphisms
        auts = automorphisms(G)
    seen = set()
    reps = []
    for v in iter_generating_vectors(G, sig, periods, canonical=False, node_cap=node_cap):
        key = v.entries
        if key in seen:
            continue
        reps.append(v)
        ent = np.asarray(key, dtype=np.int64)
        for phi in auts:
            seen.add(tuple(int(x) for x in phi[ent]))
    return reps


# -- counting ---------------------------------------------------------------

def _count_dtype(size, length):
    return np.int64 if length * np.log2(max(size, 2)) < 62 else object


def count_homs_in(G, sig, elements=None):
    """Number of tuples (a_i, b_i, c_j) with entries in ``elements`` (a
    subgroup, default all of G), ord(c_j) = m_j and the long relation.

    Surjectivity is not required.  Exact dynamic programming over the
    distribution of partial products.
    """
    n = G.order
    els = np.arange(n) if elements is None else np.asarray(sorted(elements))
    eo = G.element_order
    dtype = _count_dtype(els.size, 2 * sig.orbit_genus + sig.r)
    f = np.zeros(n, dtype=dtype)
    f[0] = 1
    m, iv = G.mul, G.inverse
    if sig.orbit_genus:
        ct = commutator_table(G, els).ravel()
        vals, mult = np.unique(ct, return_counts=True)
        mult = mult.astype(dtype)
        for _ in range(sig.orbit_genus):
            # f'[y] = sum_c mult[c] f[y c^-1]
            f = (f[m[:, iv[vals]]] * mult[None, :]).sum(axis=1)
    for p in sig.periods:
        cs = els[eo[els] == p]
        if cs.size == 0:
            return 0
        f = f[m[:, iv[cs]]].sum(axis=1)
    return int(f[0])


def count_torsion_free_homs(G, sig):
    """Homomorphisms from the Fuchsian group of ``sig`` to G with torsion-free kernel."""
    return count_homs_in(G, sig)


def count_torsion_free_homs_brute(G, sig):
    """Plain enumeration oracle for small cases (orbit genus 0 only)."""
    import itertools
    if sig.orbit_genus:
        raise ParameterError("the brute-force oracle handles orbit genus 0 only")
    eo = G.element_order
    lists = [np.flatnonzero(eo == p).tolist() for p in sig.periods]
    total = 0
    for tup in itertools.product(*lists):
        if G.prod(tup) == 0:
            total += 1
    return total


def count_torsion_free_homs_character(G, table, sig):
    """Triangle-signature count from the character table.

    Uses (1/|G|) sum_chi chi(1)^-1 S_1 S_2 S_3 with S_i the sum of chi over
    the elements of order m_i.  The sum is formed exactly as
    sum_chi (L / chi(1)) S_1 S_2 S_3 with L the lcm of the degrees and must be
    a rational integer divisible by L |G|.
    """
    if sig.orbit_genus != 0 or sig.r != 3:
        raise ParameterError("the character formula applies to triangle signatures (0; m1, m2, m3)")
    if table.group_order != G.order:
        raise InconsistencyError("character table order differs from the group order")
    N = table.exponent
    L = lcm(*table.degrees)
    total = Cyclotomic.integer(N, 0)
    for deg, row in zip(table.degrees, table.values):
        prod = Cyclotomic.integer(N, L // deg)
        for m_i in sig.periods:
            s = Cyclotomic.integer(N, 0)
            for val, o, size in zip(row, table.class_orders, table.class_sizes):
                if o == m_i:
                    s = s + val * size
            prod = prod * s
        total = total + prod
    if not total.is_integer():
        raise InconsistencyError("character sum is not a rational integer; the table is inconsistent")
    v = total.to_int()
    if v % (L * G.order):
        raise InconsistencyError(f"character sum {v} is not divisible by {L * G.order}")
    return v // (L * G.order)


def count_epimorphisms(G, sig):
    """Surjective torsion-free homomorphisms onto G.

    Inclusion-exclusion over the subgroup lattice: Epi(K) = Hom(K) minus the
    sum of Epi(J) over proper subgroups J of K.  Subgroups missing one of the
    periods as an element order contribute nothing and are skipped.
    """
    eo = G.element_order
    need = set(sig.periods)
    subs = []
    for mk in all_subgroups(G):
        orders = set(eo[mk].tolist())
        if need <= orders:
            subs.append(mk)
    epi = []
    for i, K in enumerate(subs):
        h = count_homs_in(G, sig, np.flatnonzero(K))
        for j in range(i):
            J = subs[j]
            if J.sum() < K.sum() and not (J & ~K).any():
                h -= epi[j]
        epi.append(h)
    if not subs or not subs[-1].all():
        return 0
    return int(epi[-1])


def count_epimorphism_classes(G, sig, aut_order=None):
    """Epimorphisms onto G up to Aut(G), which acts freely on them."""
    e = count_epimorphisms(G, sig)
    a = aut_order if aut_order is not None else automorphism_group_order(G)[0]
    if e % a:
        raise InconsistencyError(f"{e} epimorphisms are not divisible by |Aut(G)| = {a}")
    return e // a


# -- classification -----------------------------------------------------------

@dataclass
class ActionRecord:
    order: int
    group: str
    catalog_id: tuple | None
    signature: Signature
    witness: GeneratingVector | None
    status: str = "found"            # found | undecided
    hom_count: int | None = None
    epi_classes: int | None = None
    maximality: str | None = None
    catalog_complete: bool = True

    def sort_key(self):
        return (self.order, self.catalog_id or (self.order, 0), self.signature)

    def to_json(self):
        return {
            "order": self.order,
            "group": self.group,
            "catalog_id": list(self.catalog_id) if self.catalog_id else None,
            "signature": str(self.signature),
            "status": self.status,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "hom_count": self.hom_count,
            "epi_classes": self.epi_classes,
            "maximality": self.maximality,
            "catalog_complete": self.catalog_complete,
        }


def classify_group(G, genus, node_cap=DEFAULT_NODE_CAP, counts=False, complete=True):
    """Records for every signature of the given genus realized by G."""
    periods = sorted(set(int(x) for x in G.element_order if x >= 2))
    out = []
    if not periods:
        return out
    aut = None
    for sig in enumerate_signatures(genus, G.order, periods):
        try:
            v = find_generating_vector(G, sig, node_cap=node_cap)
        except SearchBudgetExceeded:
            out.append(ActionRecord(G.order, G.label, G.catalog_id, sig, None, status="undecided",
                                    catalog_complete=complete))
            continue
        if v is None:
            continue
        rec = ActionRecord(G.order, G.label, G.catalog_id, sig, v, catalog_complete=complete)
        if counts:
            rec.hom_count = count_torsion_free_homs(G, sig)
            if aut is None:
                aut = automorphism_group_order(G)[0]
            rec.epi_classes = count_epimorphism_classes(G, sig, aut)
        out.append(rec)
    return out


def _orders_in_range(genus, catalog, max_order, orders_filter):
    top = hurwitz_bound(genus)
    if max_order is not None:
        top = min(top, max_order)
    wanted = range(2, top + 1)
    if orders_filter is not None:
        wanted = [n for n in wanted if n in set(orders_filter)]
    return list(wanted)


def coverage(genus, catalog, max_order=None, orders_filter=None):
    """Which orders in the classification range are missing or incomplete."""
    orders = _orders_in_range(genus, catalog, max_order, orders_filter)
    have = set(catalog.orders())
    return {
        "orders": orders,
        "missing": [n for n in orders if n not in have],
        "incomplete": [n for n in orders if n in have and not catalog.is_complete(n)],
    }


def _worker(args):
    path, order, index, genus, node_cap, counts = args
    from .groups.catalog import _cached_load
    cat = _cached_load(path)
    return classify_group(cat.get(order, index), genus, node_cap, counts, cat.is_complete(order))


def classify(genus, catalog: GroupCatalog | None = None, max_order=None, orders_filter=None,
             workers=1, node_cap=DEFAULT_NODE_CAP, counts=False):
    """All (group, signature) actions in the given genus over the catalog.

    Orders run over 2..84(g-1) (optionally capped and filtered).  Records of
    orders whose catalog completeness is not claimed carry
    ``catalog_complete = False``; see ``coverage`` for missing orders.
    """
    if genus < 2:
        raise ParameterError("genus must be at least 2")
    if catalog is None:
        catalog = catalog_load()
    tasks = []
    for n in _orders_in_range(genus, catalog, max_order, orders_filter):
        for e in catalog.entries(n):
            tasks.append((n, e.index))
    records = []
    if workers > 1 and catalog.path is not None and len(tasks) > 1:
        args = [(str(catalog.path), n, i, genus, node_cap, counts) for n, i in tasks]
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as ex:
            for part in ex.map(_worker, args, chunksize=1):
                records.extend(part)
    else:
        for n, i in tasks:
            records.extend(classify_group(catalog.get(n, i), genus, node_cap, counts, catalog.is_complete(n)))
    for rec in records:
        if rh_genus(rec.signature, rec.order) != genus:
            raise InconsistencyError(f"record {rec.group} {rec.signature} does not have genus {genus}")
    records.sort(key=ActionRecord.sort_key)
    return records


def signature_label(g0, periods):
    return format_signature(g0, periods)
