"""Homomorphism extension, automorphism groups and isomorphism testing."""
from __future__ import annotations

import numpy as np

from ..errors import ResourceError
from .group import DEFAULT_CAP, quotient

DEFAULT_NODE_BUDGET = 5_000_000


def word_tree(G, gens):
    """BFS spanning tree of the Cayley graph for right multiplication.

    Returns (order, parent, via) where every non-identity ``e`` equals
    ``parent[e] * gens[via[e]]`` and ``order`` lists elements parents-first.
    """
    n = G.order
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order = [0]
    i = 0
    while i < len(order):
        x = order[i]
        for s, g in enumerate(gens):
            y = int(G.mul[x, g])
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                via[y] = s
                order.append(y)
        i += 1
    return order, parent, via


def extend_to_homomorphism(G, gens, images, H, tree=None):
    """Extend ``gens[i] -> images[i]`` to a homomorphism G -> H.

    ``gens`` must generate G.  Returns the element map as an array, or None
    when the assignment does not respect the relations of G.
    """
    if tree is None:
        tree = word_tree(G, gens)
    order, parent, via = tree
    if len(order) != G.order:
        raise ValueError("gens do not generate the group")
    phi = np.zeros(G.order, dtype=np.int64)
    im = np.asarray(images, dtype=np.int64)
    for y in order[1:]:
        phi[y] = H.mul[phi[parent[y]], im[via[y]]]
    for s, g in enumerate(gens):
        if not np.array_equal(H.mul[phi, im[s]], phi[G.mul[:, g]]):
            return None
    return phi


def _class_size_of(G):
    cl = G.classes
    return np.asarray([cl.sizes[c] for c in cl.class_of], dtype=np.int64)


def _search_maps(G, H, want_all, node_budget):
    """Backtrack over images of G's generators inside H; yield bijective homs."""
    gens = list(G.generators)
    if G.order != H.order:
        return
    if not gens:
        yield np.zeros(1, dtype=np.int64)
        return
    tree = word_tree(G, gens)
    go, ho = G.element_order, H.element_order
    gcs, hcs = _class_size_of(G), _class_size_of(H)
    cands = []
    for g in gens:
        c = np.flatnonzero((ho == go[g]) & (hcs == gcs[g]))
        cands.append(c.tolist())
    k = len(gens)
    # orders of pairwise products give cheap necessary conditions
    pair = {}
    for i in range(k):
        for j in range(i):
            a, b = gens[i], gens[j]
            pair[(i, j)] = (int(go[G.mul[a, b]]), int(go[G.mul[a, G.inverse[b]]]))
    chosen = [0] * k
    nodes = 0

    def rec(i):
        nonlocal nodes
        if i == k:
            phi = extend_to_homomorphism(G, gens, chosen, H, tree)
            if phi is not None and np.unique(phi).size == G.order:
                yield phi
            return
        for h in cands[i]:
            nodes += 1
            if nodes > node_budget:
                raise ResourceError(f"isomorphism search exceeded the node budget {node_budget}")
            ok = True
            for j in range(i):
                hj = chosen[j]
                if (int(ho[H.mul[h, hj]]), int(ho[H.mul[h, H.inverse[hj]]])) != pair[(i, j)]:
                    ok = False
                    break
            if not ok:
                continue
            chosen[i] = h
            yield from rec(i + 1)

    yield from rec(0)


def automorphisms(G, cap=DEFAULT_CAP, node_budget=DEFAULT_NODE_BUDGET):
    """All automorphisms of G as element permutations (arrays), sorted."""
    if G.order > cap:
        raise ResourceError(f"automorphism search requested for order {G.order} above the cap {cap}")
    auts = [phi for phi in _search_maps(G, G, True, node_budget)]
    auts.sort(key=lambda a: a.tolist())
    return auts


def automorphism_group_order(G, cap=DEFAULT_CAP, node_budget=DEFAULT_NODE_BUDGET):
    """(|Aut(G)|, list of automorphisms as element permutations)."""
    auts = automorphisms(G, cap=cap, node_budget=node_budget)
    return len(auts), auts


def find_isomorphism(G, H, cap=DEFAULT_CAP, node_budget=DEFAULT_NODE_BUDGET):
    """An isomorphism G -> H as an element map, or None."""
    if G.order > cap and H.order > cap:
        raise ResourceError(f"isomorphism test above the cap {cap}")
    if fingerprint(G) != fingerprint(H):
        return None
    for phi in _search_maps(G, H, False, node_budget):
        return phi
    return None


def is_isomorphic(G, H, cap=DEFAULT_CAP, node_budget=DEFAULT_NODE_BUDGET):
    return find_isomorphism(G, H, cap=cap, node_budget=node_budget) is not None


def fingerprint(G):
    """Isomorphism invariant used to reject quickly before searching."""
    cached = getattr(G, "_fingerprint", None)
    if cached is not None:
        return cached
    cl = G.classes
    eo = G.element_order
    sq = G.mul[np.arange(G.order), np.arange(G.order)]
    class_data = sorted(
        (int(eo[r]), s, int(eo[sq[r]])) for r, s in zip(cl.representatives, cl.sizes)
    )
    D = G.derived_subgroup
    if len(D) == G.order:
        ab = ((1, 1),)
    else:
        Q, _ = quotient(G, D)
        ab = Q.order_histogram
    fp = (G.order, G.order_histogram, tuple(class_data), ab, len(G.center), len(D))
    G._fingerprint = fp
    return fp
