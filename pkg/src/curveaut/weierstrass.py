"""Weierstrass gap sequences as combinatorics of numerical semigroups.

At a point P of a genus g curve exactly g positive integers are gaps and
the remaining integers (the non-gaps) are closed under addition.  Every gap
is at most 2g - 1, so a sequence is fixed by a g-subset of {1, ..., 2g-1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, ParameterError, ResourceError

MAX_ENUM_GENUS = 16


@dataclass(frozen=True)
class GapSequence:
    genus: int
    gaps: tuple

    @property
    def nongaps(self):
        """alpha_1 < ... < alpha_g, the non-gaps in {1, ..., 2g}."""
        gs = set(self.gaps)
        return tuple(n for n in range(1, 2 * self.genus + 1) if n not in gs)

    def to_json(self, with_weight=True):
        out = {"gaps": list(self.gaps), "nongaps": list(self.nongaps)}
        if with_weight:
            out["weight"] = weight(self)
        return out


def gap_sequence_problems(g, gaps):
    """Reasons the set fails to be a gap sequence (empty when valid)."""
    gaps = list(gaps)
    if g < 1:
        return ["genus must be at least 1"]
    problems = []
    if any(not isinstance(n, int) for n in gaps):
        return ["gaps must be integers"]
    if sorted(set(gaps)) != gaps:
        problems.append("gaps must be strictly increasing")
    if len(set(gaps)) != g:
        problems.append(f"expected exactly {g} gaps, got {len(set(gaps))}")
    if not gaps or min(gaps) != 1:
        problems.append("1 must be a gap")
    if any(n < 1 for n in gaps):
        problems.append("gaps must be positive")
    if any(n > 2 * g - 1 for n in gaps):
        problems.append(f"gaps must be at most 2g-1 = {2 * g - 1}")
    if problems:
        return problems
    gs = set(gaps)
    non = [n for n in range(1, 4 * g + 1) if n not in gs]
    for i, a in enumerate(non):
        for b in non[i:]:
            if a + b <= 4 * g and a + b in gs:
                return [f"non-gaps {a} and {b} sum to the gap {a + b}"]
    return []


def is_valid_gap_sequence(g, gaps):
    """(valid, reason); reason is empty when valid."""
    problems = gap_sequence_problems(g, gaps)
    return (not problems, "; ".join(problems))


def enumerate_gap_sequences(g):
    """All gap sequences of genus g in lexicographic order.

    Depth-first over n = 1, 2, ...: n may be a gap unless it is a sum of two
    non-gaps already chosen, and any n > 1 may be a non-gap.
    """
    if g < 1:
        raise ParameterError("genus must be at least 1")
    if g > MAX_ENUM_GENUS:
        raise ResourceError(f"enumeration is capped at genus {MAX_ENUM_GENUS}")
    top = 2 * g - 1
    out = []

    def rec(n, gaps, nongaps):
        if len(gaps) == g:
            # the rest are non-gaps; their sums only land on numbers >= n
            out.append(GapSequence(g, tuple(gaps)))
            return
        if len(gaps) + (top - n + 1) < g:
            return
        if not any(n - a in nongaps for a in nongaps):
            gaps.append(n)
            rec(n + 1, gaps, nongaps)
            gaps.pop()
        if n > 1:
            nongaps.add(n)
            rec(n + 1, gaps, nongaps)
            nongaps.discard(n)

    rec(1, [], set())
    return out


def weight(seq):
    """w(P) = sum (n_i - i)."""
    return sum(n - i for i, n in enumerate(seq.gaps, 1))


def max_weight(g):
    return g * (g - 1) // 2


def nongap_pairing_holds(seq):
    """alpha_j + alpha_{g-j} >= 2g for 0 < j < g."""
    a = seq.nongaps
    g = seq.genus
    return all(a[j - 1] + a[g - j - 1] >= 2 * g for j in range(1, g))


@dataclass(frozen=True)
class PointCountBounds:
    lower: int
    upper: int
    total_weight: int


def weierstrass_point_count_bounds(g):
    if g < 2:
        raise DomainError("genus must be at least 2")
    return PointCountBounds(2 * g + 2, g ** 3 - g, g ** 3 - g)


def wnf_genus_bound(m, n):
    """(n-1)(m-1)/2 for coprime m, n >= 2, as a Fraction."""
    if m < 2 or n < 2:
        raise ParameterError("m and n must be at least 2")
    if gcd(m, n) != 1:
        raise DomainError(f"gcd({m},{n}) must be 1")
    return Fraction((n - 1) * (m - 1), 2)


def noether_gaps_constant(seq):
    """Noether gaps of the constant point sequence P, P, ... (they equal the Weierstrass gaps)."""
    return seq.gaps
