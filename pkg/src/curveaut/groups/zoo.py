"""Named small groups.

``named_group`` understands direct products written with ``x`` (``C2xD8``,
``C3x(C3:C4)``), powers ``C2^3``, the families ``Cn``, ``Dn`` (order n),
``Dicn`` (order 4n), ``Qn`` (generalised quaternion of order n), ``Sn``,
``An``, ``PSL(2,p)`` and a fixed table of further names.
"""
from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from ..errors import ParameterError
from .construct import (abelian, alternating, cyclic, dicyclic, dihedral,
                        direct_product, psl2, semidirect, symmetric)
from .group import FiniteGroup, quotient
from .morphisms import word_tree


def semidirect_by_action(N, H, images, label=""):
    """N x| H where the i-th generator of H acts on N by the permutation images[i].

    ``images[i]`` must be an automorphism of N (as an element map) and the
    assignment must extend to a homomorphism H -> Aut(N).  Elements are pairs
    (n, h) with (n1, h1)(n2, h2) = (n1 phi_h1(n2), h1 h2).
    """
    gens = list(H.generators)
    if len(images) != len(gens):
        raise ParameterError("one automorphism per generator of H is required")
    order, parent, via = word_tree(H, gens)
    phi = np.zeros((H.order, N.order), dtype=np.int64)
    phi[0] = np.arange(N.order)
    imgs = [np.asarray(a, dtype=np.int64) for a in images]
    for y in order[1:]:
        phi[y] = phi[parent[y]][imgs[via[y]]]
    for s, g in enumerate(gens):
        # homomorphism check: phi(h g) = phi(h) o phi(g)
        if not np.array_equal(phi[H.mul[:, g]], phi[:, imgs[s]]):
            raise ParameterError("the action does not define a homomorphism into Aut(N)")
    n, m = N.order, H.order
    idx = np.arange(n * m)
    nn, hh = idx % n, idx // n
    a_n, a_h = nn[:, None], hh[:, None]
    b_n, b_h = nn[None, :], hh[None, :]
    table = H.mul[a_h, b_h] * n + N.mul[a_n, phi[a_h, b_n]]
    return FiniteGroup(table, label=label)


def _heisenberg(p):
    def op(x, y):
        a, b, c = x
        d, e, f = y
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)
    return FiniteGroup.from_closure([(1, 0, 0), (0, 1, 0)], op, (0, 0, 0), label=f"He{p}")


def _matrix_group(gens, p, label, projective=False):
    def norm(m):
        if not projective:
            return m
        # scale so that the first nonzero entry is 1
        for v in m:
            if v:
                s = pow(v, -1, p)
                return tuple(x * s % p for x in m)
        return m

    def op(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return norm(((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p))
    return FiniteGroup.from_closure([norm(g) for g in gens], op, (1, 0, 0, 1), label=label, limit=2000)


def _fermat_quartic_group():
    """(C4 x C4) x| S3: diagonal scalings by 4th roots of unity modulo scalars,
    extended by permutations of the three coordinates."""
    def norm(e):
        return tuple((x - e[2]) % 4 for x in e)

    def op(x, y):
        # (e, s) maps v to w with w_i = i^e_i v_s(i); x is applied first
        (e, s), (f, t) = x, y
        g = tuple((f[i] + e[t[i]]) % 4 for i in range(3))
        u = tuple(s[t[i]] for i in range(3))
        return (norm(g), u)
    ident = ((0, 0, 0), (0, 1, 2))
    gens = [((1, 0, 0), (0, 1, 2)), ((0, 0, 0), (1, 2, 0)), ((0, 0, 0), (1, 0, 2))]
    return FiniteGroup.from_closure(gens, op, ident, label="(C4xC4):S3")


def _central_product_c4_d8():
    P = direct_product(cyclic(4), dihedral(4))
    z = next(x for x in dihedral(4).center if x)
    # pair (a, b) has index a*8 + b
    return quotient(P, [0, 2 * 8 + z], label="C4oD8")[0]


def _inversion(N):
    return N.inverse.copy()


def _special(name):
    if name == "Q8":
        return dicyclic(2)
    if name == "SL(2,3)":
        return _matrix_group([(1, 1, 0, 1), (0, 2, 1, 0)], 3, "SL(2,3)")
    if name == "GL(2,3)":
        return _matrix_group([(1, 1, 0, 1), (0, 2, 1, 0), (2, 0, 0, 1)], 3, "GL(2,3)")
    if name == "SL(2,5)":
        return _matrix_group([(1, 1, 0, 1), (0, 4, 1, 0)], 5, "SL(2,5)")
    if name == "PGL(2,5)":
        return _matrix_group([(1, 1, 0, 1), (0, 4, 1, 0), (2, 0, 0, 1)], 5, "PGL(2,5)", projective=True)
    if name == "F20":
        return semidirect(5, 2, 4, label="F20")
    if name == "F21":
        return semidirect(7, 2, 3, label="C7:C3")
    if name == "M16":
        return semidirect(8, 5, 2, label="M16")
    if name == "QD16":
        return semidirect(8, 3, 2, label="QD16")
    if name == "C4:C4":
        return semidirect(4, 3, 4, label="C4:C4")
    if name == "C3:C8":
        return semidirect(3, 2, 8, label="C3:C8")
    if name == "C9:C3":
        return semidirect(9, 4, 3, label="C9:C3")
    if name == "He3":
        return _heisenberg(3)
    if name == "C4oD8":
        return _central_product_c4_d8()
    if name == "(C4xC2):C2":
        N = abelian([4, 2])
        # c fixes b and sends a to ab; element (i, j) of C4xC2 has index 2i + j
        img = [2 * ((i) % 4) + ((j + i) % 2) for i in range(4) for j in range(2)]
        return semidirect_by_action(N, cyclic(2), [img], label="(C4xC2):C2")
    if name == "(C3xC3):C2":
        N = abelian([3, 3])
        return semidirect_by_action(N, cyclic(2), [_inversion(N)], label="(C3xC3):C2")
    if name == "C3:D8":
        # D8 acts on C3 through the quotient by the Klein subgroup containing r^2 and s
        D = dihedral(4)
        C = cyclic(3)
        imgs = []
        for g in D.generators:
            # dihedral(4) encodes r^i s^t as 2i + t; rotations by odd i invert
            i = g // 2
            imgs.append(_inversion(C) if i % 2 else np.arange(3))
        return semidirect_by_action(C, D, imgs, label="C3:D8")
    if name == "(C4xC4):S3":
        return _fermat_quartic_group()
    if name == "1" or name == "C1":
        return cyclic(1)
    return None


_TOKEN = re.compile(r"^(C|D|Dic|Q|S|A)(\d+)(?:\^(\d+))?$")


def _split_product(name):
    parts, depth, cur = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


@lru_cache(maxsize=None)
def named_group(name):
    """Build the group with the given structural name."""
    name = name.strip().replace(" ", "")
    g = _special(name)
    if g is not None:
        return g
    m = re.match(r"^PSL\(2,(\d+)\)$", name)
    if m:
        return psl2(int(m.group(1)))
    parts = _split_product(name)
    if len(parts) > 1:
        if all(re.match(r"^C\d+(\^\d+)?$", p) for p in parts):
            orders = []
            for p in parts:
                t = _TOKEN.match(p)
                orders += [int(t.group(2))] * int(t.group(3) or 1)
            return abelian(orders)
        return direct_product(*[named_group(p) for p in parts], label=name)
    if name.startswith("(") and name.endswith(")"):
        return named_group(name[1:-1])
    t = _TOKEN.match(name)
    if not t:
        m = re.match(r"^C(\d+):(\d+)C(\d+)$", name)
        if m:
            return semidirect(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        raise ParameterError(f"unknown group name {name!r}")
    fam, n, k = t.group(1), int(t.group(2)), t.group(3)
    if k is not None:
        if fam != "C":
            raise ParameterError(f"powers are only supported for cyclic factors: {name!r}")
        return abelian([n] * int(k))
    if fam == "C":
        return cyclic(n)
    if fam == "D":
        if n % 2:
            raise ParameterError(f"{name}: dihedral labels give the order, which must be even")
        return dihedral(n // 2)
    if fam == "Dic":
        return dicyclic(n)
    if fam == "Q":
        if n % 4 or n < 8:
            raise ParameterError(f"{name}: generalised quaternion order must be a multiple of 4, at least 8")
        g = dicyclic(n // 4)
        g.label = name
        return g
    if fam == "S":
        return symmetric(n)
    if fam == "A":
        return alternating(n)
    raise ParameterError(f"unknown group name {name!r}")


ALIASES = {"V4": "C2xC2", "C2^2": "C2xC2", "S3": "D6", "Dic2": "Q8", "Q16": "Q16"}


def canonical_name(name):
    name = name.strip()
    return ALIASES.get(name, name)
