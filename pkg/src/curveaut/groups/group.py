"""Finite groups as dense multiplication tables.

Elements are the integers ``0..n-1`` with ``0`` the identity.  ``mul[a, b]``
is the product ``a*b``.  Groups built from permutations use the convention
that ``a*b`` means "apply ``a`` first, then ``b``", so permutation actions are
right actions: ``x^(ab) = (x^a)^b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from ..errors import DomainError, ResourceError, ValidationError

DEFAULT_CAP = 512
SUBGROUP_LIMIT = 50000


@dataclass(frozen=True)
class ConjugacyClasses:
    class_of: tuple
    representatives: tuple
    sizes: tuple

    def __len__(self):
        return len(self.representatives)

    def members(self, k):
        return [x for x, c in enumerate(self.class_of) if c == k]


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, mul, label="", catalog_id=None, check=True):
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int32))
        n = mul.shape[0]
        if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
            raise ValidationError("multiplication table must be a non-empty square array")
        if mul.min() < 0 or mul.max() >= n:
            raise ValidationError("multiplication table has out-of-range entries")
        mul.setflags(write=False)
        self.mul = mul
        self.order = n
        self.label = label
        self.catalog_id = catalog_id
        ar = np.arange(n)
        if check:
            if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
                raise ValidationError(f"{label or 'group'}: index 0 is not a two-sided identity")
        inv = np.argmin(mul, axis=1)
        if check and not (np.all(mul[ar, inv] == 0) and np.all(mul[inv, ar] == 0)):
            raise ValidationError(f"{label or 'group'}: some element has no two-sided inverse")
        inv = inv.astype(np.int32)
        inv.setflags(write=False)
        self.inverse = inv
        self.element_order = _element_orders(mul)

    def __repr__(self):
        name = self.label or "group"
        return f"<FiniteGroup {name} of order {self.order}>"

    def __len__(self):
        return self.order

    # -- constructors -------------------------------------------------
    @classmethod
    def from_permutations(cls, generators, label="", catalog_id=None, limit=DEFAULT_CAP):
        """Permutation group generated by ``generators`` (one-line notation)."""
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        if not gens:
            return cls(np.zeros((1, 1), dtype=np.int32), label, catalog_id)
        d = len(gens[0])
        for g in gens:
            if len(g) != d or sorted(g.tolist()) != list(range(d)):
                raise ValidationError(f"{label or 'group'}: generator is not a permutation of 0..{d - 1}")
        ident = np.arange(d)
        elems = [ident]
        index = {ident.tobytes(): 0}
        i = 0
        while i < len(elems):
            x = elems[i]
            for g in gens:
                y = g[x]  # apply x, then g
                key = y.tobytes()
                if key not in index:
                    if len(elems) >= limit:
                        raise ResourceError(f"permutation group exceeds the order cap {limit}")
                    index[key] = len(elems)
                    elems.append(y)
            i += 1
        P = np.array(elems)
        n = len(elems)
        mul = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            rows = P[:, P[a]]  # row b is "a then b"
            mul[a] = [index[r.tobytes()] for r in rows]
        G = cls(mul, label, catalog_id)
        G.permutations = P
        return G

    @classmethod
    def from_closure(cls, generators, op, identity, label="", limit=DEFAULT_CAP):
        """Group generated by hashable elements under the binary operation ``op``.

        Returns the group; the element objects are kept in ``G.elements``.
        """
        elems = [identity]
        index = {identity: 0}
        i = 0
        while i < len(elems):
            for g in generators:
                y = op(elems[i], g)
                if y not in index:
                    if len(elems) >= limit:
                        raise ResourceError(f"group exceeds the order cap {limit}")
                    index[y] = len(elems)
                    elems.append(y)
            i += 1
        n = len(elems)
        mul = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            ea = elems[a]
            mul[a] = [index[op(ea, eb)] for eb in elems]
        G = cls(mul, label)
        G.elements = elems
        G.element_index = index
        return G

    # -- basic arithmetic ---------------------------------------------
    def op(self, a, b):
        return int(self.mul[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def prod(self, seq):
        x = 0
        for y in seq:
            x = int(self.mul[x, y])
        return x

    def power(self, a, k):
        k %= int(self.element_order[a])
        x, base = 0, int(a)
        while k:
            if k & 1:
                x = int(self.mul[x, base])
            base = int(self.mul[base, base])
            k >>= 1
        return x

    def commutator(self, a, b):
        """[a, b] = a b a^-1 b^-1."""
        m, iv = self.mul, self.inverse
        return int(m[m[m[a, b], iv[a]], iv[b]])

    def conj(self, x, g):
        """g^-1 x g."""
        return int(self.mul[self.mul[self.inverse[g], x], g])

    # -- derived data -------------------------------------------------
    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def exponent(self):
        e = 1
        for o in set(self.element_order.tolist()):
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def order_histogram(self):
        vals, counts = np.unique(self.element_order, return_counts=True)
        return tuple(zip(vals.tolist(), counts.tolist()))

    @cached_property
    def classes(self):
        return conjugacy_classes(self)

    @cached_property
    def center(self):
        m = self.mul
        return tuple(int(x) for x in range(self.order) if np.array_equal(m[x], m[:, x]))

    @cached_property
    def derived_subgroup(self):
        m, iv = self.mul, self.inverse
        n = self.order
        a = np.repeat(np.arange(n), n)
        b = np.tile(np.arange(n), n)
        comms = np.unique(m[m[m[a, b], iv[a]], iv[b]])
        return self.closure(comms.tolist())

    @cached_property
    def generators(self):
        return minimal_generating_set(self)

    def closure(self, gens, start=None):
        """Sorted tuple of elements of the subgroup generated by ``gens``."""
        return tuple(np.flatnonzero(self.closure_mask(gens, start)).tolist())

    def closure_mask(self, gens, start=None):
        n = self.order
        mask = np.zeros(n, dtype=bool)
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        if start is not None:
            mask |= start
        mask[0] = True
        if gens.size == 0:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            new = np.unique(self.mul[np.ix_(frontier, gens)].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def generates(self, elements):
        return bool(self.closure_mask(elements).all())

    def is_subgroup(self, elements):
        s = np.asarray(sorted(set(elements)), dtype=np.int64)
        if s.size == 0 or s[0] != 0:
            return False
        mask = np.zeros(self.order, dtype=bool)
        mask[s] = True
        return bool(mask[self.mul[np.ix_(s, s)]].all())

    def is_normal(self, elements):
        s = np.asarray(sorted(set(elements)), dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[s] = True
        m, iv = self.mul, self.inverse
        for g in self.generators:
            if not mask[m[m[iv[g], s], g]].all():
                return False
        return True

    def normal_closure(self, elements):
        m, iv = self.mul, self.inverse
        seeds = set(int(x) for x in elements)
        frontier = list(seeds)
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = int(m[m[iv[g], x], g])
                    if y not in seeds:
                        seeds.add(y)
                        nxt.append(y)
            frontier = nxt
        return self.closure(sorted(seeds))


def _element_orders(mul):
    n = mul.shape[0]
    ar = np.arange(n)
    order = np.zeros(n, dtype=np.int64)
    pw = ar.copy()
    k = 1
    while True:
        hit = (pw == 0) & (order == 0)
        order[hit] = k
        if order.all():
            break
        pw = mul[pw, ar]
        k += 1
        if k > n:
            raise ValidationError("element without finite order; table is not a group")
    order.setflags(write=False)
    return order


def check_axioms(G, full_limit=128, samples=100_000, seed=0):
    """Scan the group axioms; raise ValidationError on failure."""
    m = G.mul
    n = G.order
    ar = np.arange(n)
    name = G.label or "group"
    if not (np.array_equal(m[0], ar) and np.array_equal(m[:, 0], ar)):
        raise ValidationError(f"{name}: index 0 is not an identity")
    for row in m:
        if np.unique(row).size != n:
            raise ValidationError(f"{name}: table is not a Latin square")
    if not (np.all(m[ar, G.inverse] == 0) and np.all(m[G.inverse, ar] == 0)):
        raise ValidationError(f"{name}: inverse table is wrong")
    if n <= full_limit:
        lhs = m[m]  # lhs[a, b, c] = (a*b)*c
        rhs = m[ar[:, None, None], m[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise ValidationError(f"{name}: multiplication is not associative")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        if not np.array_equal(m[m[a, b], c], m[a, m[b, c]]):
            raise ValidationError(f"{name}: multiplication is not associative")
    return True


def conjugacy_classes(G):
    n = G.order
    m, iv = G.mul, G.inverse
    class_of = [-1] * n
    reps, sizes = [], []
    gens = np.asarray(G.generators, dtype=np.int64) if n > 1 else np.zeros(0, dtype=np.int64)
    for x in range(n):
        if class_of[x] >= 0:
            continue
        k = len(reps)
        orbit = {x}
        frontier = [x]
        while frontier:
            fr = np.asarray(frontier)
            new = np.unique(m[m[iv[gens][None, :], fr[:, None]], gens[None, :]].ravel())
            frontier = [int(y) for y in new if int(y) not in orbit]
            orbit.update(frontier)
        for y in orbit:
            class_of[y] = k
        reps.append(x)
        sizes.append(len(orbit))
    return ConjugacyClasses(tuple(class_of), tuple(reps), tuple(sizes))


def minimal_generating_set(G):
    """A small generating set, chosen deterministically.

    Tries one generator, then pairs with the first element running over class
    representatives, and otherwise grows greedily.
    """
    n = G.order
    if n == 1:
        return ()
    orders = G.element_order
    full = np.flatnonzero(orders == n)
    if full.size:
        return (int(full[0]),)
    # candidates sorted by decreasing element order, then index
    cand = sorted(range(1, n), key=lambda x: (-int(orders[x]), x))
    if n <= 512:
        reps = _class_reps_naive(G)
        reps = sorted((r for r in reps if r), key=lambda x: (-int(orders[x]), x))
        for a in reps:
            base = G.closure_mask([a])
            for b in cand:
                if base[b]:
                    continue
                if G.closure_mask([a, b], start=base).all():
                    return (a, b)
    gens = []
    mask = G.closure_mask([])
    while not mask.all():
        best, best_size = None, -1
        for x in cand:
            if mask[x]:
                continue
            sz = int(G.closure_mask(gens + [x]).sum())
            if sz > best_size:
                best, best_size = x, sz
        gens.append(best)
        mask = G.closure_mask(gens)
    return tuple(gens)


def _class_reps_naive(G):
    n = G.order
    m, iv = G.mul, G.inverse
    seen = np.zeros(n, dtype=bool)
    reps = []
    ar = np.arange(n)
    for x in range(n):
        if seen[x]:
            continue
        reps.append(x)
        seen[m[m[iv, x], ar]] = True
    return reps


# -- subgroups --------------------------------------------------------

def _key(mask):
    return np.packbits(mask).tobytes()


def all_subgroups(G, limit=SUBGROUP_LIMIT, cap=DEFAULT_CAP):
    """Every subgroup of G as a boolean mask, sorted by (order, elements)."""
    if G.order > cap:
        raise ResourceError(f"subgroup lattice requested for order {G.order} above the cap {cap}")
    cyclic = {}
    for x in range(G.order):
        mk = G.closure_mask([x])
        cyclic.setdefault(_key(mk), (mk, x))
    cyc = sorted(cyclic.values(), key=lambda t: (int(t[0].sum()), t[1]))
    subs = {}
    queue = []
    for mk, x in cyc:
        subs[_key(mk)] = (mk, [x])
        queue.append((mk, [x]))
    while queue:
        mk, gens = queue.pop()
        for cmk, x in cyc:
            if mk[x]:
                continue
            new = G.closure_mask([x] + gens, start=mk)
            k = _key(new)
            if k not in subs:
                if len(subs) >= limit:
                    raise ResourceError(f"more than {limit} subgroups")
                subs[k] = (new, gens + [x])
                queue.append((new, gens + [x]))
    out = [mk for mk, _ in subs.values()]
    out.sort(key=lambda mk: (int(mk.sum()), tuple(np.flatnonzero(mk).tolist())))
    return out


def subgroups_up_to_conjugacy(G, cap=DEFAULT_CAP):
    """List of (sorted element tuple, index) with one representative per class."""
    m, iv = G.mul, G.inverse
    gens = list(G.generators)
    seen = set()
    out = []
    for mk in all_subgroups(G, cap=cap):
        k = _key(mk)
        if k in seen:
            continue
        elems = np.flatnonzero(mk)
        out.append((tuple(elems.tolist()), G.order // elems.size))
        orbit = [elems]
        seen.add(k)
        while orbit:
            h = orbit.pop()
            for g in gens:
                c = np.zeros(G.order, dtype=bool)
                c[m[m[iv[g], h], g]] = True
                ck = _key(c)
                if ck not in seen:
                    seen.add(ck)
                    orbit.append(np.flatnonzero(c))
    return out


def subgroup_as_group(G, elements, label=""):
    """The subgroup on ``elements`` as a standalone group plus the index map.

    ``emb[i]`` is the element of G corresponding to element ``i`` of the
    returned group.
    """
    elems = sorted(set(int(x) for x in elements))
    if not elems or elems[0] != 0:
        raise DomainError("subgroup must contain the identity")
    pos = {e: i for i, e in enumerate(elems)}
    sub = G.mul[np.ix_(elems, elems)]
    try:
        table = np.vectorize(pos.__getitem__)(sub)
    except KeyError:
        raise DomainError("element set is not closed under multiplication") from None
    H = FiniteGroup(table, label=label)
    return H, tuple(elems)


def quotient(G, normal, label=""):
    """G/N as a group, with the projection as an element map."""
    N = sorted(set(int(x) for x in normal))
    if not G.is_subgroup(N):
        raise DomainError("quotient requires a subgroup")
    if not G.is_normal(N):
        raise DomainError("designated subgroup is not normal")
    n = G.order
    coset = np.full(n, -1, dtype=np.int64)
    reps = []
    Narr = np.asarray(N)
    for x in range(n):
        if coset[x] >= 0:
            continue
        coset[G.mul[x, Narr]] = len(reps)
        reps.append(x)
    r = np.asarray(reps)
    table = coset[G.mul[np.ix_(r, r)]]
    Q = FiniteGroup(table, label=label)
    return Q, tuple(coset.tolist())


def coset_action(G, subgroup):
    """Right action of G on the right cosets of H: returns (n x index) array.

    ``act[g][i]`` is the coset index of ``(H x_i) g``; coset 0 is H itself.
    """
    H = np.asarray(sorted(set(int(x) for x in subgroup)))
    n = G.order
    coset = np.full(n, -1, dtype=np.int64)
    reps = []
    for x in range(n):
        if coset[x] >= 0:
            continue
        coset[G.mul[H, x]] = len(reps)
        reps.append(x)
    r = np.asarray(reps)
    return coset[G.mul[r[None, :], np.arange(n)[:, None]]]
