"""Constructors for the standard families of small groups.

Dihedral groups are labelled by their order: ``D12`` has order 12.
"""
from __future__ import annotations

from itertools import permutations as _perms
from math import gcd

import numpy as np

from ..errors import ParameterError
from .group import FiniteGroup


def _table_group(n, fn, label):
    """Group on 0..n-1 whose product is given by the vectorised ``fn(a, b)``."""
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    return FiniteGroup(fn(a, b), label=label)


def cyclic(n):
    if n < 1:
        raise ParameterError("cyclic group needs n >= 1")
    return _table_group(n, lambda a, b: (a + b) % n, f"C{n}")


def direct_product(*groups, label=None):
    if not groups:
        return cyclic(1)
    G = groups[0]
    table = G.mul.astype(np.int64)
    for H in groups[1:]:
        m = H.order
        n = table.shape[0]
        # pair (x, y) has index x*m + y
        big = table[np.repeat(np.arange(n), m)[:, None], np.repeat(np.arange(n), m)[None, :]] * m
        big += H.mul[np.tile(np.arange(m), n)[:, None], np.tile(np.arange(m), n)[None, :]]
        table = big
    if label is None:
        label = "x".join(_wrap(g.label) for g in groups)
    return FiniteGroup(table, label=label)


def _wrap(label):
    return f"({label})" if any(c in label for c in "x:.") else label


def abelian(partition):
    """Direct product of cyclic groups with the given orders."""
    parts = [int(p) for p in partition if int(p) > 1] or [1]
    if len(invariant_factors(parts)) <= 1:
        G = direct_product(*[cyclic(p) for p in parts]) if len(parts) > 1 else cyclic(parts[0])
        G.label = f"C{G.order}"
        return G
    label = _abelian_label(parts)
    return direct_product(*[cyclic(p) for p in parts], label=label)


def invariant_factors(parts):
    """Invariant factors d1 >= d2 >= ... (d_{i+1} | d_i) of a product of cyclic groups."""
    primes = {}
    for m in parts:
        q = 2
        while m > 1:
            if m % q == 0:
                e = 1
                while m % q == 0:
                    m //= q
                    e *= q
                primes.setdefault(q, []).append(e)
            q += 1
    for q in primes:
        primes[q].sort(reverse=True)
    k = max((len(v) for v in primes.values()), default=0)
    out = []
    for i in range(k):
        d = 1
        for v in primes.values():
            if i < len(v):
                d *= v[i]
        out.append(d)
    return out


def _abelian_label(parts):
    inv = invariant_factors(parts)
    out = []
    for p in sorted(set(inv), reverse=True):
        k = inv.count(p)
        out.append(f"C{p}^{k}" if k > 2 else "x".join([f"C{p}"] * k))
    return "x".join(out)


def dihedral(n):
    """Dihedral group of order 2n (symmetries of an n-gon)."""
    if n < 1:
        raise ParameterError("dihedral group needs n >= 1")
    # element 2*i + s stands for r^i s^s
    def fn(a, b):
        i, s = a // 2, a % 2
        j, t = b // 2, b % 2
        k = (i + np.where(s == 1, -j, j)) % n
        return 2 * k + (s + t) % 2
    return _table_group(2 * n, fn, f"D{2 * n}")


def dicyclic(n):
    """Dicyclic group of order 4n: a^(2n)=1, x^2=a^n, x a x^-1 = a^-1."""
    if n < 1:
        raise ParameterError("dicyclic group needs n >= 1")
    N = 2 * n

    def fn(a, b):
        i, j = a // 2, a % 2
        k, l = b // 2, b % 2
        e = (i + np.where(j == 1, -k, k) + n * j * l) % N
        return 2 * e + (j + l) % 2
    label = "Q8" if n == 2 else f"Dic{n}"
    return _table_group(4 * n, fn, label)


def semidirect(n, k, m, label=None):
    """C_n x| C_m where the generator of C_m acts by x -> x^k."""
    if n < 1 or m < 1:
        raise ParameterError("semidirect product needs positive orders")
    if gcd(k, n) != 1 or pow(k, m, n) != 1 % n:
        raise ParameterError(f"k={k} does not define an action of C{m} on C{n}: need gcd(k,n)=1 and k^m = 1 mod n")
    powk = np.array([pow(k, j, n) for j in range(m)], dtype=np.int64)

    # element j*n + i stands for r^i s^j with s r s^-1 = r^k
    def fn(a, b):
        i, j = a % n, a // n
        i2, j2 = b % n, b // n
        return ((j + j2) % m) * n + (i + powk[j] * i2) % n
    if label is None:
        label = f"C{n}:C{m}" if k % n != 1 % n else f"C{n}xC{m}"
    return _table_group(n * m, fn, label)


def symmetric(n):
    if not 1 <= n <= 6:
        raise ParameterError("symmetric groups are supported for n <= 6")
    if n == 1:
        return cyclic(1)
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return FiniteGroup.from_permutations(gens, label=f"S{n}", limit=720)


def alternating(n):
    if not 1 <= n <= 6:
        raise ParameterError("alternating groups are supported for n <= 6")
    if n < 3:
        return cyclic(1)
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(p)
    return FiniteGroup.from_permutations(gens, label=f"A{n}", limit=360)


def construct_standard(kind, *args):
    """Build a standard group.

    kinds: ``cyclic n``, ``dihedral n`` (order 2n), ``abelian partition``,
    ``symmetric n``, ``alternating n``, ``direct G H ...``,
    ``semidirect n k m`` and ``dicyclic n`` (order 4n).
    """
    builders = {
        "cyclic": cyclic,
        "dihedral": dihedral,
        "abelian": abelian,
        "symmetric": symmetric,
        "alternating": alternating,
        "direct": direct_product,
        "semidirect": semidirect,
        "dicyclic": dicyclic,
    }
    if kind not in builders:
        raise ParameterError(f"unknown group kind {kind!r}")
    return builders[kind](*args)


def permutation_group(gens, label=""):
    return FiniteGroup.from_permutations(gens, label=label)


def psl2(p):
    """PSL(2, p) for an odd prime p acting on the projective line."""
    pts = list(range(p)) + [p]  # p stands for infinity

    def mobius(a, b, c, d):
        img = []
        for x in pts:
            if x == p:
                img.append(a * pow(c, -1, p) % p if c % p else p)
                continue
            den = (c * x + d) % p
            img.append(p if den == 0 else (a * x + b) * pow(den, -1, p) % p)
        return img
    squares = sorted({x * x % p for x in range(1, p)})
    g = next(x for x in range(2, p) if x in squares and _mult_order(x, p) == (p - 1) // 2) if p > 3 else 1
    gens = [mobius(1, 1, 0, 1), mobius(g, 0, 0, 1), mobius(0, p - 1, 1, 0)]
    return FiniteGroup.from_permutations(gens, label=f"PSL(2,{p})")


def _mult_order(x, p):
    k, y = 1, x % p
    while y != 1:
        y = y * x % p
        k += 1
    return k


def all_permutations(n):
    return [list(p) for p in _perms(range(n))]
