"""Exact arithmetic in Z[zeta_N].

An element is a tuple of integer coefficients over the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial.
"""
from __future__ import annotations

from functools import lru_cache


def _poly_divexact(num, den):
    """Exact quotient of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce(coeffs, n):
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        q = c[i]
        if q:
            # Phi is monic: subtract q * x^(i-deg) * Phi
            for j in range(deg + 1):
                c[i - deg + j] -= q * phi[j]
    c = c[:deg] + [0] * max(0, deg - len(c))
    return tuple(c)


class Cyclotomic:
    __slots__ = ("n", "c")

    def __init__(self, n, coeffs):
        self.n = n
        self.c = _reduce(coeffs, n)

    @classmethod
    def zeta(cls, n, k=1):
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def integer(cls, n, v):
        return cls(n, [v])

    def _check(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.n, [other])
        if other.n != self.n:
            raise ValueError("cyclotomic elements over different N")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Cyclotomic(self.n, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.n, [a * other for a in self.c])
        other = self._check(other)
        prod = [0] * (2 * len(self.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic(self.n, prod)

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugate: zeta^k -> zeta^(-k)."""
        full = [0] * self.n
        for k, a in enumerate(self.c):
            full[(-k) % self.n] += a
        return Cyclotomic(self.n, full)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclotomic(self.n, [other])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self):
        return hash((self.n, self.c))

    def is_integer(self):
        return all(a == 0 for a in self.c[1:])

    def to_int(self):
        if not self.is_integer():
            raise ValueError("not a rational integer")
        return self.c[0] if self.c else 0

    def __repr__(self):
        terms = [f"{a}*z^{k}" if k else str(a) for k, a in enumerate(self.c) if a]
        return f"Cyc{self.n}(" + (" + ".join(terms) or "0") + ")"
