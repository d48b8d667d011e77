"""Signatures, Riemann-Hurwitz arithmetic and the classical bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, ParameterError, ParseError


@dataclass(frozen=True, order=True)
class Signature:
    """(g0; m_1, ..., m_r) with the periods kept sorted."""
    orbit_genus: int
    periods: tuple = ()

    def __post_init__(self):
        if self.orbit_genus < 0:
            raise ParameterError("orbit genus must be nonnegative")
        ps = tuple(sorted(int(m) for m in self.periods))
        if any(m < 2 for m in ps):
            raise ParameterError(f"periods must be at least 2: {ps}")
        object.__setattr__(self, "periods", ps)

    @classmethod
    def parse(cls, text):
        g0, periods = parse_signature_text(text)
        return cls(g0, tuple(periods))

    @property
    def r(self):
        return len(self.periods)

    def __str__(self):
        return format_signature(self.orbit_genus, self.periods)

    def area(self):
        """2 g0 - 2 + sum(1 - 1/m), the normalized hyperbolic area."""
        return 2 * self.orbit_genus - 2 + sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))


def parse_signature_text(text):
    """Split "g0;m1,...,mr" (or "g0;-") into (g0, [m1, ...]) keeping the order."""
    s = str(text).strip().strip("()")
    if ";" not in s:
        raise ParseError(f"signature {text!r} must look like 'g0;m1,m2,...' or 'g0;-'")
    head, tail = s.split(";", 1)
    try:
        g0 = int(head)
        tail = tail.strip()
        periods = [] if tail in ("", "-") else [int(x) for x in tail.split(",")]
    except ValueError:
        raise ParseError(f"signature {text!r} has non-integer entries") from None
    if g0 < 0 or any(m < 2 for m in periods):
        raise ParseError(f"signature {text!r}: g0 >= 0 and periods >= 2 are required")
    return g0, periods


def format_signature(g0, periods):
    return f"{g0};" + (",".join(str(m) for m in periods) if periods else "-")


def rh_genus(sig, order):
    """Genus of a surface with a G-action of the given signature (exact, maybe non-integral)."""
    if order < 1:
        raise ParameterError("group order must be positive")
    return 1 + Fraction(order) * sig.area() / 2


def enumerate_signatures(genus, order, allowed_periods):
    """All signatures with periods from ``allowed_periods`` giving the genus.

    Riemann-Hurwitz fixes the area A = (2g - 2)/order; after choosing g0 the
    periods must satisfy sum(1 - 1/m) = A - 2 g0 + 2, and since every term is
    at least 1/2 the number of periods is at most twice the right side.
    """
    allowed = sorted(set(int(m) for m in allowed_periods))
    if not allowed or allowed[0] < 2:
        raise ParameterError("allowed periods must be a nonempty set of integers >= 2")
    target_area = Fraction(2 * genus - 2, order)
    out = []
    g0 = 0
    while 2 * g0 - 2 <= target_area:
        rest = target_area - (2 * g0 - 2)
        for ps in _period_multisets(rest, allowed):
            out.append(Signature(g0, tuple(ps)))
        g0 += 1
    out.sort()
    return out


def _period_multisets(rest, allowed):
    found = []

    def rec(start, remaining, acc):
        if remaining == 0:
            found.append(list(acc))
            return
        for i in range(start, len(allowed)):
            term = 1 - Fraction(1, allowed[i])
            if term > remaining:
                break
            # all later terms are at least this one
            acc.append(allowed[i])
            rec(i, remaining - term, acc)
            acc.pop()
    if rest >= 0:
        rec(0, rest, [])
    return found


@dataclass(frozen=True)
class RamifiedPlace:
    """Ramification over ``count`` places of the base of degree ``degree``.

    ``wild`` is the wild part q (1 when tame); ``different`` overrides the
    different exponent when it is known directly (Artin-Schreier places).
    """
    e: int
    wild: int = 1
    degree: int = 1
    count: int = 1
    different: int | None = None

    def exponent(self):
        if self.different is not None:
            return self.different
        if self.wild == 1:
            return self.e - 1
        q = self.wild
        if self.e % q:
            raise ParameterError(f"wild part {q} does not divide e={self.e}")
        e_star = self.e // q
        if (q - 1) % e_star:
            raise ParameterError(f"wild data e*={e_star}, q={q}: e* must divide q-1")
        return e_star * q + q - 2


@dataclass(frozen=True)
class CoverData:
    degree: int
    base_genus: int
    places: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.degree < 1 or self.base_genus < 0:
            raise ParameterError("degree must be positive and base genus nonnegative")
        for p in self.places:
            if p.e < 1 or p.wild < 1:
                raise ParameterError("ramification indices must be positive")
            if p.wild > 1 and not _is_prime_power(p.wild):
                raise ParameterError(f"wild part {p.wild} is not a prime power")


def _is_prime_power(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def cover_genus(c):
    """Genus of a Galois cover from the base genus and the ramification data.

    2(g - 1) = 2(g_E - 1) deg + deg * sum(beta / e * d) over ramified places.
    """
    total = Fraction(2 * (c.base_genus - 1) * c.degree)
    for p in c.places:
        total += Fraction(c.degree * p.exponent() * p.degree * p.count, p.e)
    return 1 + total / 2


def _need_genus(g):
    if g < 2:
        raise DomainError(f"genus must be at least 2, got {g}")


def hurwitz_bound(g):
    _need_genus(g)
    return 84 * (g - 1)


def wiman_bound(g):
    """Largest order of a single automorphism in characteristic 0."""
    _need_genus(g)
    return 2 * (2 * g + 1)


def poschar_bound(g):
    _need_genus(g)
    return 16 * g ** 4


def large_group_threshold(g):
    _need_genus(g)
    return 4 * (g - 1)


def element_order_bound_poschar(g, p):
    """Bound on the order of an automorphism fixing a place, characteristic p."""
    _need_genus(g)
    if p < 2:
        raise DomainError("characteristic must be a prime")
    return 2 * p * (g + 1) * (2 * g + 1) ** 2


@dataclass(frozen=True)
class ExceptionalFamily:
    name: str
    params: dict
    genus: int
    group_order: int
    group: str
    equation: str

    def threshold(self):
        """The bound the instance exceeds: 8g^3 (Henn) or 16g^4 (Stichtenoth)."""
        return 16 * self.genus ** 4 if self.name == "Stichtenoth" else 8 * self.genus ** 3


def _primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def exceptional_families(max_genus):
    """Every instance of the large-group families with 2 <= genus <= max_genus."""
    if max_genus < 2:
        raise DomainError("max_genus must be at least 2")
    out = []
    k = 2
    while 2 ** (k - 1) <= max_genus:
        g = 2 ** (k - 1)
        out.append(ExceptionalFamily("Henn-i", {"p": 2, "k": k}, g, 2 ** (2 * k + 1) * (2 ** k + 1),
                                     f"order 2^{2 * k + 1}*{2 ** k + 1}", f"y^2+y+x^{2 ** k + 1}=0"))
        k += 1
    for p in _primes_upto(2 * max_genus + 1)[1:]:
        q = p
        while (q - 1) // 2 <= max_genus:
            g = (q - 1) // 2
            if g >= 2:
                # full group: the hyperelliptic involution extends PGL(2,q)
                out.append(ExceptionalFamily("Henn-ii", {"p": p, "q": q}, g, 2 * q * (q * q - 1),
                                             f"C2.PGL(2,{q})", f"y^2=x^{q}-x"))
            q *= p
    for p in _primes_upto(max_genus + 1):
        q = p
        while (q * q - q) // 2 <= max_genus:
            g = (q * q - q) // 2
            if g >= 2:
                out.append(ExceptionalFamily("Henn-iii", {"p": p, "q": q}, g,
                                             q ** 3 * (q ** 3 + 1) * (q * q - 1), f"PGU(3,{q})",
                                             f"y^{q}+y=x^{q + 1}"))
            q *= p
    r = 1
    while True:
        q0 = 2 ** r
        q = 2 * q0 * q0
        g = q0 * (q - 1)
        if g > max_genus:
            break
        out.append(ExceptionalFamily("Henn-iv", {"p": 2, "q0": q0, "q": q}, g,
                                     q * q * (q * q + 1) * (q - 1), f"Sz({q})",
                                     f"y^{q}+y=x^{q0}(x^{q}+x)"))
        r += 1
    for p in _primes_upto(max_genus + 1):
        n = 1
        while p ** n * (p ** n - 1) // 2 <= max_genus:
            pn = p ** n
            g = pn * (pn - 1) // 2
            if g >= 2:
                out.append(ExceptionalFamily("Stichtenoth", {"p": p, "n": n}, g,
                                             pn ** 3 * (pn ** 3 + 1) * (pn ** 2 - 1), "Aut",
                                             f"y^{pn}+y=x^{pn * p}"))
            n += 1
    out.sort(key=lambda f: (f.name, f.genus, sorted(f.params.items())))
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def period_candidates(element_orders: Iterable[int]) -> list[int]:
    return sorted(set(int(o) for o in element_orders if o >= 2))
