"""Finite fields GF(p^s), polynomials, rational functions and Moebius maps.

Elements of GF(p^s) are integers 0..q-1 whose base-p digits are the
coefficients (constant term first) of a polynomial modulo the smallest monic
irreducible of degree s in lexicographic order.  The primitive element is
the smallest element (as an integer) of multiplicative order q-1, so every
choice below is deterministic.  Polynomials are numpy integer arrays, lowest
coefficient first, with no trailing zeros (the zero polynomial is empty).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError, ParseError

MAX_FIELD_SIZE = 2048


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- small helpers over the prime field, used to build extensions ----------

def _pm_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_mod(a, f, p):
    a = list(a)
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) >= len(f):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(f)
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _pm_trim(a)
    return a


def _pm_mul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    return _pm_trim(r)


def _pm_powmod(base, e, f, p):
    result, b = [1], _pm_mod(base, f, p)
    while e:
        if e & 1:
            result = _pm_mod(_pm_mul(result, b, p), f, p)
        b = _pm_mod(_pm_mul(b, b, p), f, p)
        e >>= 1
    return result


def _pm_gcd(a, b, p):
    a, b = _pm_trim(list(a)), _pm_trim(list(b))
    while b:
        a, b = b, _pm_mod(a, b, p)
    return a


def _pm_sub(a, b, p):
    n = max(len(a), len(b))
    return _pm_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _is_irreducible(f, p):
    """Rabin's test for a monic polynomial over F_p."""
    s = len(f) - 1
    x = [0, 1]
    if _pm_sub(_pm_powmod(x, p ** s, f, p), x, p):
        return False
    for r in _prime_factors(s):
        h = _pm_sub(_pm_powmod(x, p ** (s // r), f, p), x, p)
        if len(_pm_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p, s):
    """Smallest monic irreducible polynomial of degree s over F_p (coefficients low first)."""
    for tail in itertools.product(range(p), repeat=s):
        f = list(reversed(tail)) + [1]
        if s > 1 and f[0] == 0:
            continue
        if _is_irreducible(f, p):
            return tuple(f)
    raise DomainError(f"no irreducible polynomial of degree {s} over F_{p}")


class GF:
    """The field with q = p^s elements, with full addition and multiplication tables."""

    def __init__(self, p, s=1):
        if not _is_prime(p):
            raise ParameterError(f"characteristic {p} is not prime")
        if s < 1:
            raise ParameterError("extension degree must be positive")
        q = p ** s
        if q > MAX_FIELD_SIZE:
            raise ParameterError(f"field size {q} exceeds the supported maximum {MAX_FIELD_SIZE}")
        self.p, self.s, self.q = p, s, q
        self.modulus = (0, 1) if s == 1 else smallest_irreducible(p, s)
        idx = np.arange(q)
        digits = np.stack([(idx // p ** k) % p for k in range(s)], axis=1)
        weights = p ** np.arange(s)
        self.add_t = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int64)
        self.neg = (((-digits) % p) @ weights).astype(np.int64)
        self._digits = digits
        self.primitive, self.exp = self._find_primitive()
        self.log = np.zeros(q, dtype=np.int64)
        self.log[self.exp] = np.arange(q - 1)
        la = self.log[:, None] + self.log[None, :]
        mt = self.exp[la % (q - 1)]
        mt[0, :] = 0
        mt[:, 0] = 0
        self.mul_t = mt.astype(np.int64)
        self.inv_t = np.zeros(q, dtype=np.int64)
        self.inv_t[1:] = self.exp[(-self.log[1:]) % (q - 1)]
        self.sub_t = self.add_t[:, self.neg]

    def _slow_mul(self, a, b):
        da = [int(x) for x in self._digits[a]]
        db = [int(x) for x in self._digits[b]]
        r = _pm_mod(_pm_mul(_pm_trim(da), _pm_trim(db), self.p), list(self.modulus), self.p) if self.s > 1 \
            else [a * b % self.p]
        return sum(int(c) * self.p ** k for k, c in enumerate(r))

    def _find_primitive(self):
        q = self.q
        if q == 2:
            return 1, np.array([1], dtype=np.int64)
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                return g, np.asarray(exp, dtype=np.int64)
        raise DomainError("no primitive element found")

    def __repr__(self):
        return f"GF({self.p}^{self.s})" if self.s > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash((self.p, self.s))

    # element arithmetic
    def add(self, a, b):
        return int(self.add_t[a, b])

    def sub(self, a, b):
        return int(self.sub_t[a, b])

    def mul(self, a, b):
        return int(self.mul_t[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self.inv_t[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def from_int(self, n):
        """Image of the integer n (the prime subfield)."""
        return int(n) % self.p

    def order(self, a):
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        from math import gcd
        return (self.q - 1) // gcd(int(self.log[a]), self.q - 1)

    def root_of_unity(self, m):
        """The primitive m-th root of unity g^((q-1)/m), g the fixed primitive element."""
        if (self.q - 1) % m:
            raise DomainError(f"{self} has no primitive {m}-th root of unity ({m} does not divide {self.q - 1})")
        return int(self.exp[(self.q - 1) // m])

    def sqrt(self, a):
        """A square root of a (the one with smaller log), or None."""
        if a == 0:
            return 0
        la = int(self.log[a])
        if self.q % 2 == 0:
            return int(self.exp[(la * (self.q // 2)) % (self.q - 1)])
        if la % 2:
            return None
        return int(self.exp[la // 2])

    def pth_root(self, a):
        return self.pow(a, self.q // self.p) if a else 0

    def elements(self):
        return range(self.q)

    def subfield_elements(self, t):
        """The elements of the subfield with p^t elements."""
        if self.s % t:
            raise DomainError(f"GF({self.p}^{t}) is not a subfield of {self}")
        pt = self.p ** t
        return sorted(a for a in range(self.q) if self.pow(a, pt) == a)


@lru_cache(maxsize=64)
def field(p, s=1):
    return GF(p, s)


def parse_field(text):
    """Parse a field spec such as "7" or "3^2"."""
    t = str(text).strip()
    try:
        if "^" in t:
            p, s = (int(x) for x in t.split("^", 1))
        else:
            p, s = int(t), 1
    except ValueError:
        raise ParseError(f"field spec {text!r} must look like 'p' or 'p^s'") from None
    return field(p, s)


def embedding(F, E):
    """Element map from F into E (a field homomorphism), or DomainError."""
    if F.p != E.p or E.s % F.s:
        raise DomainError(f"{F} does not embed in {E}")
    if F.s == 1:
        return np.arange(F.q, dtype=np.int64)
    # image of the class of x: a root in E of F's modulus
    f = np.asarray(F.modulus, dtype=np.int64)
    for beta in range(E.q):
        if poly_eval(E, f, beta) == 0:
            break
    else:
        raise DomainError("modulus has no root in the extension")
    out = np.zeros(F.q, dtype=np.int64)
    for a in range(F.q):
        v = 0
        for k, c in enumerate(F._digits[a]):
            if c:
                v = E.add(v, E.mul(int(c), E.pow(beta, k)))
        out[a] = v
    return out


# -- polynomials ---------------------------------------------------------------

def P(coeffs):
    """A trimmed polynomial from a coefficient list (lowest first)."""
    a = np.asarray(list(coeffs), dtype=np.int64)
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def deg(a):
    return len(a) - 1 if len(a) else -1


def poly_add(F, a, b):
    n = max(len(a), len(b))
    x = np.zeros(n, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    x[: len(a)] = a
    y[: len(b)] = b
    return P(F.add_t[x, y])


def poly_neg(F, a):
    return P(F.neg[a])


def poly_sub(F, a, b):
    return poly_add(F, a, poly_neg(F, b))


def poly_scale(F, a, c):
    return P(F.mul_t[c, a]) if len(a) else a


def poly_mul(F, a, b):
    if not len(a) or not len(b):
        return P([])
    res = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    lb = len(b)
    for i, ai in enumerate(a):
        if ai:
            res[i: i + lb] = F.add_t[res[i: i + lb], F.mul_t[ai, b]]
    return P(res)


def poly_pow(F, a, e):
    result = P([1])
    base = a
    while e:
        if e & 1:
            result = poly_mul(F, result, base)
        base = poly_mul(F, base, base)
        e >>= 1
    return result


def poly_divmod(F, a, b):
    if not len(b):
        raise ZeroDivisionError("polynomial division by zero")
    a = np.array(a, dtype=np.int64)
    db = len(b) - 1
    inv_lead = F.inv(int(b[-1]))
    if len(a) - 1 < db:
        return P([]), P(a)
    qt = np.zeros(len(a) - db, dtype=np.int64)
    for k in range(len(a) - 1, db - 1, -1):
        c = F.mul(int(a[k]), inv_lead)
        if c:
            qt[k - db] = c
            s = k - db
            a[s: k + 1] = F.sub_t[a[s: k + 1], F.mul_t[c, b]]
    return P(qt), P(a[:db])


def poly_monic(F, a):
    if not len(a):
        return a
    return poly_scale(F, a, F.inv(int(a[-1])))


def poly_gcd(F, a, b):
    while len(b):
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_deriv(F, a):
    if len(a) <= 1:
        return P([])
    return P([F.mul(F.from_int(k), int(a[k])) for k in range(1, len(a))])


def poly_eval(F, a, x):
    r = 0
    for c in reversed(a):
        r = F.add(F.mul(r, x), int(c))
    return r


def poly_from_roots(F, roots):
    r = P([1])
    for a in roots:
        r = poly_mul(F, r, P([F.neg[a], 1]))
    return r


def poly_map(a, emb):
    """Apply an element map (e.g. an embedding) to the coefficients."""
    return P(emb[a]) if len(a) else a


def poly_pth_root(F, a):
    """b with b^p = a, for a polynomial in x^p."""
    p = F.p
    if any(a[k] for k in range(len(a)) if k % p):
        raise DomainError("polynomial is not a p-th power")
    return P([F.pth_root(int(a[k])) for k in range(0, len(a), p)])


def squarefree_decomposition(F, a):
    """{multiplicity: product of the monic irreducible factors with that multiplicity}.

    Works in characteristic p (perfect base field) by splitting off the
    part that is a polynomial in x^p.
    """
    out = {}
    a = poly_monic(F, a)
    if deg(a) <= 0:
        return out

    def put(k, f):
        if deg(f) > 0:
            out[k] = poly_mul(F, out[k], f) if k in out else f

    c = poly_gcd(F, a, poly_deriv(F, a))
    w = poly_divmod(F, a, c)[0]
    i = 1
    while deg(w) > 0:
        y = poly_gcd(F, w, c)
        put(i, poly_divmod(F, w, y)[0])
        c = poly_divmod(F, c, y)[0]
        w = y
        i += 1
    if deg(c) > 0:
        for k, f in squarefree_decomposition(F, poly_pth_root(F, c)).items():
            put(k * F.p, f)
    return out


def multiplicity_pattern(F, a):
    """Sorted multiplicities of the roots of a over the algebraic closure."""
    pat = []
    for k, f in squarefree_decomposition(F, a).items():
        pat.extend([k] * deg(f))
    return tuple(sorted(pat))


# -- rational functions -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class RatFunc:
    F: GF
    num: np.ndarray
    den: np.ndarray

    @classmethod
    def make(cls, F, num, den=None):
        num = P(num)
        den = P([1]) if den is None else P(den)
        if not len(den):
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(F, num, den) if len(num) else poly_monic(F, den)
        num = poly_divmod(F, num, g)[0]
        den = poly_divmod(F, den, g)[0]
        lead = F.inv(int(den[-1]))
        return cls(F, poly_scale(F, num, lead), poly_scale(F, den, lead))

    @property
    def degree(self):
        return max(deg(self.num), deg(self.den))

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.F == other.F and np.array_equal(self.num, other.num)
                and np.array_equal(self.den, other.den))

    def __hash__(self):
        return hash((self.F, tuple(self.num.tolist()), tuple(self.den.tolist())))

    def __call__(self, x):
        """Value at x in F, or None at a pole."""
        d = poly_eval(self.F, self.den, x)
        if d == 0:
            return None
        return self.F.div(poly_eval(self.F, self.num, x), d)

    def map_coefficients(self, E, emb):
        return RatFunc.make(E, poly_map(self.num, emb), poly_map(self.den, emb))

    def compose_mobius(self, m):
        """z(sigma(x)) for sigma = (a x + b)/(c x + d), as a reduced rational function."""
        F = self.F
        a, b, c, d = m.coeffs
        D = self.degree
        X = P([b, a])
        Y = P([d, c])

        def homog(poly):
            coeffs = [int(poly[i]) if i < len(poly) else 0 for i in range(D + 1)]
            r = P([coeffs[D]])
            ypow = P([1])
            for k in range(1, D + 1):
                ypow = poly_mul(F, ypow, Y)
                r = poly_add(F, poly_mul(F, r, X), poly_scale(F, ypow, coeffs[D - k]))
            return r
        return RatFunc.make(F, homog(self.num), homog(self.den))

    def __str__(self):
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


def format_poly(a, var="x"):
    if not len(a):
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = int(a[k])
        if not c:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms)


# -- Moebius maps ---------------------------------------------------------------

@dataclass(frozen=True)
class Mobius:
    """x -> (a x + b)/(c x + d), normalized so the first nonzero coefficient is 1."""
    F: GF
    coeffs: tuple

    @classmethod
    def make(cls, F, a, b, c, d):
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise DomainError("singular Moebius map")
        lead = next(x for x in (a, b, c, d) if x)
        li = F.inv(lead)
        return cls(F, tuple(F.mul(x, li) for x in (a, b, c, d)))

    def __matmul__(self, other):
        """self after other: x -> self(other(x))."""
        F = self.F
        a, b, c, d = self.coeffs
        e, f, g, h = other.coeffs
        return Mobius.make(F, F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
                           F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))

    def __call__(self, x):
        """Image of x in F, or None when it is the point at infinity."""
        a, b, c, d = self.coeffs
        den = self.F.add(self.F.mul(c, x), d)
        if den == 0:
            return None
        return self.F.div(self.F.add(self.F.mul(a, x), b), den)

    def map_coefficients(self, E, emb):
        return Mobius.make(E, *(int(emb[x]) for x in self.coeffs))


def mobius_closure(gens, limit=100_000):
    """All elements of the group generated by the Moebius maps."""
    if not gens:
        return []
    F = gens[0].F
    ident = Mobius.make(F, 1, 0, 0, 1)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g @ x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise DomainError(f"Moebius group larger than {limit}")
        frontier = nxt
    return list(seen)
