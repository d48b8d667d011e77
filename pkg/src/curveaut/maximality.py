"""Non-maximal signatures, extendability tests and surface counts.

A finite group G acting with signature S is a candidate for being the full
automorphism group only if S is absent from the table of Fuchsian inclusions
shipped in ``data/singerman.json``.  When S is present the generating-vector
tests below decide (or search for) an extension.
"""
from __future__ import annotations

import ast
import itertools
import json
import math
import operator
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import DataError, DomainError, InconsistencyError, ParameterError, ResourceError
from .groups.catalog import data_path
from .groups.group import all_subgroups, coset_action, subgroup_as_group
from .groups.morphisms import automorphisms, extend_to_homomorphism, find_isomorphism, fingerprint
from .search import (DEFAULT_NODE_CAP, GeneratingVector, SearchBudgetExceeded, count_epimorphism_classes,
                     find_generating_vector, iter_generating_vectors, vector_classes)
from .signatures import Signature, format_signature


# -- parametric signature patterns --------------------------------------

_TERM = re.compile(r"(\d*)([a-z]*)")


@dataclass(frozen=True)
class Term:
    coef: int
    variables: str     # letters multiplied together, "" for a constant

    def value(self, binding):
        v = self.coef
        for x in self.variables:
            v *= binding[x]
        return v

    def __str__(self):
        if not self.variables:
            return str(self.coef)
        return ("" if self.coef == 1 else str(self.coef)) + self.variables


@dataclass(frozen=True)
class Pattern:
    orbit_genus: int
    terms: tuple

    @classmethod
    def parse(cls, text):
        s = str(text).strip().strip("()")
        if ";" not in s:
            raise DataError(f"pattern {text!r} must look like 'g0;t,2u,...'")
        head, tail = s.split(";", 1)
        tail = tail.strip()
        terms = []
        if tail not in ("", "-"):
            for tok in tail.split(","):
                mt = _TERM.fullmatch(tok.strip())
                if mt is None or not (mt.group(1) or mt.group(2)):
                    raise DataError(f"bad pattern term {tok!r}")
                terms.append(Term(int(mt.group(1)) if mt.group(1) else 1, mt.group(2)))
        return cls(int(head), tuple(terms))

    @property
    def variables(self):
        return sorted({x for t in self.terms for x in t.variables})

    def instantiate(self, binding):
        return Signature(self.orbit_genus, tuple(t.value(binding) for t in self.terms))

    def __str__(self):
        return format_signature(self.orbit_genus, [str(t) for t in self.terms])

    def match(self, sig, fixed=None):
        """All parameter bindings (dicts) making the pattern equal to ``sig``.

        Every free variable is at least 2.  ``fixed`` pre-binds variables.
        """
        if sig.orbit_genus != self.orbit_genus or sig.r != len(self.terms):
            return []
        fixed = dict(fixed or {})
        found = []
        for perm in sorted(set(itertools.permutations(sig.periods))):
            b = _solve_terms(self.terms, perm, fixed)
            if b is not None and b not in found:
                found.append(b)
        return found


def _solve_terms(terms, values, fixed):
    b = dict(fixed)
    pending = list(zip(terms, values))
    while pending:
        progress = False
        rest = []
        for t, v in pending:
            free = [x for x in t.variables if x not in b]
            if len(set(free)) > 1:
                rest.append((t, v))
                continue
            known = t.coef
            for x in t.variables:
                if x in b:
                    known *= b[x]
            if not free:
                if known != v:
                    return None
            else:
                x = free[0]
                power = free.count(x)
                if v % known:
                    return None
                root = round((v // known) ** (1 / power))
                if root < 2 or root ** power * known != v:
                    return None
                b[x] = root
            progress = True
        if not progress:
            raise ParameterError("pattern has terms with several unknown parameters; fix some parameters first")
        pending = rest
    return b


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt, ast.LtE: operator.le,
        ast.Gt: operator.gt, ast.GtE: operator.ge}


def eval_constraint(text, binding):
    """Evaluate a predicate such as "t+u>=7" over integer parameters."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        raise DataError(f"bad constraint {text!r}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in binding:
                raise DataError(f"constraint {text!r} uses unknown parameter {node.id}")
            return binding[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                if type(op) not in _OPS:
                    break
                r = ev(right)
                if not _OPS[type(op)](left, r):
                    return False
                left = r
            else:
                return True
        if isinstance(node, ast.BoolOp) and isinstance(node.op, ast.And):
            return all(ev(v) for v in node.values)
        raise DataError(f"unsupported syntax in constraint {text!r}")
    return bool(ev(tree))


# -- the table of inclusions ----------------------------------------------

@dataclass(frozen=True)
class SingermanRule:
    case_id: str
    inner: Pattern
    outer: Pattern
    constraints: tuple
    index: int
    normal: bool

    def admits(self, binding):
        return all(eval_constraint(c, binding) for c in self.constraints)


@dataclass(frozen=True)
class Overgroup:
    rule: SingermanRule
    outer: Signature
    index: int
    params: tuple = ()      # sorted (name, value) pairs


def load_singerman_table(path=None):
    path = Path(path) if path else data_path("singerman.json")
    return _load_rules(str(path))


@lru_cache(maxsize=4)
def _load_rules(path):
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read inclusion table {path}: {exc}") from None
    rules = []
    for row in raw:
        try:
            rules.append(SingermanRule(row["case"], Pattern.parse(row["inner"]), Pattern.parse(row["outer"]),
                                       tuple(row.get("constraints", ())), int(row["index"]), bool(row["normal"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"malformed inclusion row {row!r}: {exc}") from None
    return tuple(rules)


def singerman_overgroups(sig, rules=None):
    """Rows of the inclusion table whose inner pattern matches ``sig``.

    Returns Overgroup records (rule, concrete outer signature, index) in table
    order, one per distinct outer signature of each rule.
    """
    rules = load_singerman_table() if rules is None else rules
    out = []
    for rule in rules:
        seen = set()
        for b in rule.inner.match(sig):
            if not rule.admits(b):
                continue
            outer = rule.outer.instantiate(b)
            if outer in seen:
                continue
            seen.add(outer)
            out.append(Overgroup(rule, outer, rule.index, tuple(sorted(b.items()))))
    return out


# -- verdicts ---------------------------------------------------------------

class Extends(str, Enum):
    EXTENDS = "extends"
    DOES_NOT_EXTEND = "does-not-extend"
    UNDECIDED = "undecided"


class Verdict(str, Enum):
    MAXIMAL_WITNESS = "maximal-witness-exists"
    NEVER_MAXIMAL = "never-maximal"
    UNDECIDED = "undecided"


@dataclass
class CondResult:
    verdict: Extends
    case: str | None = None
    detail: str = ""
    relative: bool = False          # depends on catalog completeness
    cases: list = field(default_factory=list)
    witness: object = None


@dataclass
class MaximalityVerdict:
    verdict: Verdict
    relative: bool = False
    reason: str = ""
    per_vector: list = field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict.value, "relative_to_catalog": self.relative, "reason": self.reason}


def _ops(G):
    m, iv = G.mul, G.inverse

    def mul(*xs):
        r = 0
        for x in xs:
            r = int(m[r, x])
        return r
    return mul, (lambda x: int(iv[x]))


def _is_automorphism(G, gens, images):
    phi = extend_to_homomorphism(G, list(gens), list(images), G)
    return phi is not None and np.unique(phi).size == G.order


def cond1_test(v, strict=False):
    """Extendability of a non-triangular action through a normal inclusion.

    Covers the signatures (2;-), (1;t,t), (1;t) and (0;t,t,u,u), the last
    with c_1, c_2 of period t and c_3, c_4 of period u in that order.
    ``strict`` applies t+u > 5 for the last shape instead of the table's
    t+u >= 5.
    """
    G = v.group
    mul, inv = _ops(G)
    g0, ps = v.orbit_genus, tuple(v.periods)
    if g0 == 2 and not ps:
        a1, b1, a2, b2 = v.hyperbolic
        w = mul(inv(b1), a2, b2)
        u = mul(inv(b1), a2)
        gens = (a1, b1, a2, b2)
        images = (inv(a1), mul(a1, inv(b1), inv(a1)), mul(w, inv(a2), inv(w)), mul(u, inv(b2), inv(u)))
        case = "1"
    elif g0 == 1 and len(ps) == 2 and ps[0] == ps[1]:
        a1, b1 = v.hyperbolic
        c1 = v.elliptic[0]
        gens = (a1, b1, c1)
        images = (inv(a1), inv(b1), mul(inv(mul(a1, b1)), inv(c1), b1, a1))
        case = "2"
    elif g0 == 1 and len(ps) == 1:
        a1, b1 = v.hyperbolic
        gens = (a1, b1)
        images = (inv(a1), inv(b1))
        case = "3"
    elif g0 == 0 and len(ps) == 4 and ps[0] == ps[1] and ps[2] == ps[3]:
        t, u = ps[0], ps[2]
        if (t + u <= 5) if strict else (t + u < 5):
            raise DomainError(f"signature (0;{t},{t},{u},{u}) is outside the normal inclusion's range")
        c1, c2, c3, c4 = v.elliptic
        gens = (c1, c2, c3, c4)
        images = (c2, c1, mul(inv(c1), c4, c1), mul(c2, c3, inv(c2)))
        case = "4"
    else:
        raise DomainError(f"cond1 covers (2;-), (1;t,t), (1;t) and (0;t,t,u,u); got {v.signature}")
    ok = _is_automorphism(G, gens, images)
    return CondResult(Extends.EXTENDS if ok else Extends.DOES_NOT_EXTEND, case,
                      "assignment is an automorphism" if ok else "assignment is not an automorphism")


# -- triangle vectors ---------------------------------------------------

def braid_move(v, k):
    """Swap positions k, k+1 of a genus-0 vector: (x, y) -> (y, y^-1 x y).

    The product is unchanged and the new vector defines a conjugate surface
    kernel, so for triangle signatures it describes the same action.
    """
    G = v.group
    mul, inv = _ops(G)
    c = list(v.elliptic)
    p = list(v.periods)
    x, y = c[k], c[k + 1]
    c[k], c[k + 1] = y, mul(inv(y), x, y)
    p[k], p[k + 1] = p[k + 1], p[k]
    return GeneratingVector(G, 0, tuple(p), (), tuple(c))


def bring_to_front(v, i, j):
    """Braid-equivalent vector with the entries at i and j (i < j) in the first two slots."""
    if not 0 <= i < j < len(v.elliptic):
        raise ParameterError("need 0 <= i < j < r")
    for k in range(i - 1, -1, -1):
        v = braid_move(v, k)
    for k in range(j - 1, 0, -1):
        v = braid_move(v, k)
    return v


def reorder_triangle(v, periods):
    """Braid-equivalent vector whose periods appear in the given order."""
    target = list(periods)
    if sorted(target) != sorted(v.periods):
        raise ParameterError("target periods must be a reordering of the vector's periods")
    for pos in range(len(target)):
        cur = list(v.periods)
        k = next(k for k in range(pos, len(cur)) if cur[k] == target[pos])
        for s in range(k - 1, pos - 1, -1):
            v = braid_move(v, s)
    return v


def normal_closure_index(G, words):
    """Index in G of the normal closure of the given elements."""
    N = G.normal_closure([int(w) for w in words])
    return G.order // len(N)


def _word(G, v, spec):
    """Evaluate a word given as [(slot, exponent), ...] in c_1..c_3 (slots 1-based)."""
    x = 0
    for slot, e in spec:
        x = int(G.mul[x, G.power(v.elliptic[slot - 1], e)])
    return x


# normal-closure preconditions of the sporadic triangle cases, as (periods
# in the case's order, words whose conjugates generate K, index of K,
# inclusion rule used for the extension)
SPORADIC_CASES = {
    "3": ((2, 7, 7), [[(2, 1), (3, -1), (2, 1), (1, 1), (3, 3)]], 56, "T2"),
    "4": ((3, 3, 7), [[(2, 1), (1, 1), (3, 2)]], 21, "T3"),
    "5": ((3, 8, 8), [[(2, 2), (1, 1), (3, 2)], [(3, -1), (2, 1), (1, -1), (2, -1), (1, 1), (2, -1)]], 72, "T5"),
    "6": ((4, 4, 5), [[(1, -1), (2, -1), (3, 2)]], 20, "T7"),
}


def _sporadic_orders(ps):
    """Period orders for cases (7) (0;3,n,3n) and (8) (0;2,n,2n) matching ``ps``."""
    out = []
    s = sorted(ps)
    for case, small, k, idx, rule, lo in (("7", 3, 3, 3, "T10", 3), ("8", 2, 2, 2, "T11", 4)):
        rest = list(s)
        if small not in rest:
            continue
        rest.remove(small)
        a, b = sorted(rest)
        if b == k * a and a >= lo:
            out.append((case, (small, a, b), idx, rule))
    return out


def cond2_test(v, catalog=None, strict=False, single_class=False, node_cap=DEFAULT_NODE_CAP):
    """Extendability of a triangular action, checked case by case.

    Cases (1) and (2) are decided from the vector.  The remaining cases check
    the stated normal-closure condition and then look for the overgroup in
    the catalog; an overgroup found that way certifies this vector only when
    ``single_class`` says the action is unique up to Aut(G), otherwise the
    case is undecided.  ``strict`` uses strict thresholds
    (t > 4; t > 3, t+u > 7; n > 3; n > 4) instead of the table's.
    """
    G = v.group
    if v.orbit_genus != 0 or len(v.periods) != 3:
        raise DomainError(f"cond2 needs a triangular signature, got {v.signature}")
    mul, inv = _ops(G)
    ps = tuple(v.periods)
    cases = []

    if ps[0] == ps[1] == ps[2] and (ps[0] > 4 if strict else ps[0] >= 4):
        c1, c2, c3 = v.elliptic
        ok = _is_automorphism(G, (c1, c2, c3), (c2, c3, c1))
        cases.append(CondResult(Extends.EXTENDS if ok else Extends.DOES_NOT_EXTEND, "1",
                                "rotation " + ("is" if ok else "is not") + " an automorphism"))

    pairs = [(i, j) for i, j in ((0, 1), (0, 2), (1, 2)) if ps[i] == ps[j]]
    for i, j in pairs:
        t = ps[i]
        u = ps[3 - i - j]
        good = (t > 3 and t + u > 7) if strict else (t >= 3 and t + u >= 7)
        if not good:
            continue
        w = bring_to_front(v, i, j)
        c1, c2, c3 = w.elliptic
        ok = _is_automorphism(G, (c1, c2, c3), (c2, c1, mul(c2, c3, inv(c2))))
        cases.append(CondResult(Extends.EXTENDS if ok else Extends.DOES_NOT_EXTEND, "2",
                                f"swap of slots {i + 1},{j + 1} " + ("is" if ok else "is not") + " an automorphism"))
        if ok:
            break

    sporadic = []
    for case, (order, words, idx, rule) in SPORADIC_CASES.items():
        if sorted(order) == sorted(ps):
            sporadic.append((case, order, words, idx, rule))
    for case, order, idx, rule in _sporadic_orders(ps):
        if strict and ((case == "7" and order[1] <= 3) or (case == "8" and order[1] <= 4)):
            continue
        sporadic.append((case, order, [[(2, 1)]], idx, rule))
    for case, order, words, idx, rule in sporadic:
        w = reorder_triangle(v, order)
        k = normal_closure_index(G, [_word(G, w, spec) for spec in words])
        if k != idx:
            cases.append(CondResult(Extends.DOES_NOT_EXTEND, case, f"normal closure has index {k}, not {idx}"))
            continue
        if catalog is None:
            cases.append(CondResult(Extends.UNDECIDED, case, "normal-closure condition holds; no catalog given",
                                    relative=True))
            continue
        res = extension_search(G, v.signature, catalog, rules=[rule], node_cap=node_cap)
        if res.witness is None:
            verdict = Extends.DOES_NOT_EXTEND
            detail = "no overgroup in the catalog"
        elif single_class:
            verdict = Extends.EXTENDS
            detail = f"overgroup {res.witness.overgroup.label} and the action is unique"
        else:
            verdict = Extends.UNDECIDED
            detail = f"overgroup {res.witness.overgroup.label} exists for some action"
        cases.append(CondResult(verdict, case, detail, relative=res.relative, witness=res.witness))

    relative = any(c.relative for c in cases)
    if any(c.verdict is Extends.EXTENDS for c in cases):
        first = next(c for c in cases if c.verdict is Extends.EXTENDS)
        return CondResult(Extends.EXTENDS, first.case, first.detail, relative=False, cases=cases,
                          witness=first.witness)
    if any(c.verdict is Extends.UNDECIDED for c in cases):
        return CondResult(Extends.UNDECIDED, None, "some case is undecided", relative=relative, cases=cases)
    return CondResult(Extends.DOES_NOT_EXTEND, None, "no case applies" if not cases else "every case fails",
                      relative=relative, cases=cases)


# -- restriction to a subgroup ------------------------------------------

def subgroup_signature_from_permutations(orbit_genus, periods, perms):
    """Signature of a point stabilizer of a transitive permutation action.

    ``perms`` are the permutations (arrays) of the canonical generators
    a_1, b_1, ..., c_1, ..., c_r of the outer group, whose periods are
    ``periods`` in the order of the c's.  A cycle of length l of the image
    of c_j with l < m_j contributes the period m_j / l; the orbit genus then
    follows from the index formula.
    """
    perms = [np.asarray(p, dtype=np.int64) for p in perms]
    g0 = orbit_genus
    if len(perms) != 2 * g0 + len(periods):
        raise DomainError("one permutation per canonical generator is required")
    k = perms[0].size if perms else 1
    seen = np.zeros(k, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for p in perms:
            y = int(p[x])
            if not seen[y]:
                seen[y] = True
                frontier.append(y)
    if not seen.all():
        raise DomainError("the point action is not transitive")
    inner = []
    for p, mj in zip(perms[2 * g0:], periods):
        done = np.zeros(k, dtype=bool)
        for s in range(k):
            if done[s]:
                continue
            length = 0
            x = s
            while not done[x]:
                done[x] = True
                x = int(p[x])
                length += 1
            if mj % length:
                raise DomainError(f"cycle of length {length} for a generator of period {mj}")
            if length < mj:
                inner.append(mj // length)
    area = Signature(g0, tuple(periods)).area()
    rhs = k * area - sum((1 - Fraction(1, n) for n in inner), Fraction(0)) + 2
    if rhs.denominator != 1 or rhs.numerator % 2 or rhs < 0:
        raise InconsistencyError(f"index formula gives non-integral orbit genus {rhs / 2}")
    return Signature(int(rhs) // 2, tuple(inner))


def subgroup_signature(outer, G, images, point_action, periods=None):
    """Inner signature for an epimorphism onto G and a transitive G-action.

    ``images`` are the images in G of a_1, b_1, ..., c_1, ..., c_r;
    ``point_action`` is an array act[g][i] (as from coset_action) or a
    subgroup of G given by its elements.  ``periods`` gives the order of the
    outer periods matching the c-images (default: sorted).
    """
    act = np.asarray(point_action)
    if act.ndim == 1 or act.shape[0] != G.order:
        act = coset_action(G, [int(x) for x in np.ravel(point_action)])
    ps = tuple(outer.periods) if periods is None else tuple(periods)
    g0 = outer.orbit_genus
    imgs = [int(x) for x in images]
    if len(imgs) != 2 * g0 + len(ps):
        raise DomainError("one image per canonical generator is required")
    for x, m in zip(imgs[2 * g0:], ps):
        if m % int(G.element_order[x]):
            raise DomainError(f"image of order {int(G.element_order[x])} for a generator of period {m}")
    return subgroup_signature_from_permutations(g0, ps, [act[x] for x in imgs])


# -- overgroups in the catalog ------------------------------------------

@dataclass
class ExtensionWitness:
    overgroup: object
    inclusion: np.ndarray           # element map G -> overgroup
    outer_signature: Signature
    rule: SingermanRule
    outer_vector: GeneratingVector
    subgroup: tuple

    def to_json(self):
        return {"overgroup": self.overgroup.label, "catalog_id": list(self.overgroup.catalog_id or ()),
                "outer_signature": str(self.outer_signature), "rule": self.rule.case_id,
                "index": self.rule.index, "outer_vector": self.outer_vector.to_json()}


@dataclass
class ExtensionSearchResult:
    witness: ExtensionWitness | None
    relative: bool
    missing_orders: list = field(default_factory=list)
    trace: list = field(default_factory=list)


def _is_monomorphism(G, H, phi):
    if np.unique(phi).size != G.order:
        return False
    return np.array_equal(H.mul[phi[:, None], phi[None, :]], phi[G.mul])


def extension_search(G, sig, catalog, rules=None, node_cap=DEFAULT_NODE_CAP):
    """Look for an overgroup G' acting with an outer signature of the table.

    For each matching inclusion of index k, every catalog group of order
    k|G| is scanned for a subgroup H isomorphic to G and an outer generating
    vector whose restriction to H has signature ``sig``.  The result is
    relative to the catalog when an order is missing or incomplete.
    """
    overs = singerman_overgroups(sig)
    if rules is not None:
        overs = [o for o in overs if o.rule.case_id in set(rules)]
    relative = False
    missing = []
    trace = []
    fp = fingerprint(G)
    for o in overs:
        N = o.index * G.order
        if N not in catalog.orders():
            relative = True
            missing.append(N)
            trace.append(f"{o.rule.case_id}: order {N} not in catalog")
            continue
        if not catalog.is_complete(N):
            relative = True
        for G2 in catalog.groups(N):
            eo = set(int(x) for x in G2.element_order)
            if any(m not in eo for m in o.outer.periods):
                continue
            try:
                subs = [np.flatnonzero(mk) for mk in all_subgroups(G2) if int(mk.sum()) == G.order]
            except ResourceError:
                relative = True
                trace.append(f"{o.rule.case_id}: subgroup lattice of {G2.label} too large")
                continue
            cands = []
            for els in subs:
                H, emb = subgroup_as_group(G2, els)
                if fingerprint(H) == fp:
                    cands.append((els, H, emb, coset_action(G2, els)))
            if not cands:
                continue
            try:
                for w in iter_generating_vectors(G2, o.outer, node_cap=node_cap):
                    imgs = list(w.entries)
                    for els, H, emb, act in cands:
                        inner = subgroup_signature(o.outer, G2, imgs, act, periods=w.periods)
                        if inner != sig:
                            continue
                        phi = find_isomorphism(G, H)
                        if phi is None:
                            continue
                        inc = np.asarray(emb, dtype=np.int64)[phi]
                        if not _is_monomorphism(G, G2, inc):
                            raise InconsistencyError("constructed inclusion is not a monomorphism")
                        trace.append(f"{o.rule.case_id}: {G2.label} with outer {o.outer}")
                        return ExtensionSearchResult(
                            ExtensionWitness(G2, inc, o.outer, o.rule, w, tuple(int(x) for x in els)),
                            relative, missing, trace)
            except SearchBudgetExceeded:
                relative = True
                trace.append(f"{o.rule.case_id}: search budget exhausted in {G2.label}")
    return ExtensionSearchResult(None, relative, missing, trace)


# -- overall verdict ----------------------------------------------------------

def maximality_verdict(G, sig, catalog=None, strict=False, node_cap=DEFAULT_NODE_CAP):
    """Is G the full automorphism group for some (or no) action with ``sig``?

    Signatures outside the table always give a maximal witness.  Otherwise
    one vector per Aut(G)-class is tested: all extending means never
    maximal, one failing means a maximal witness exists.
    """
    overs = singerman_overgroups(sig)
    if not overs:
        return MaximalityVerdict(Verdict.MAXIMAL_WITNESS, False, "signature is not in the inclusion table")
    try:
        auts = automorphisms(G)
        classes = vector_classes(G, sig, auts=auts, node_cap=node_cap)
    except (SearchBudgetExceeded, ResourceError) as exc:
        return MaximalityVerdict(Verdict.UNDECIDED, False, f"vector enumeration stopped: {exc}")
    if not classes:
        raise DomainError(f"{G.label} has no generating vector with signature {sig}")
    per = []
    for v in classes:
        if sig.orbit_genus == 0 and sig.r == 3:
            res = cond2_test(v, catalog, strict=strict, single_class=len(classes) == 1, node_cap=node_cap)
        else:
            try:
                res = cond1_test(v, strict=strict)
            except DomainError as exc:
                res = CondResult(Extends.UNDECIDED, None, str(exc))
        per.append(res)
    relative = any(r.relative for r in per)
    if any(r.verdict is Extends.DOES_NOT_EXTEND for r in per):
        return MaximalityVerdict(Verdict.MAXIMAL_WITNESS, relative, "some action does not extend", per)
    if all(r.verdict is Extends.EXTENDS for r in per):
        return MaximalityVerdict(Verdict.NEVER_MAXIMAL, False, "every action extends", per)
    return MaximalityVerdict(Verdict.UNDECIDED, relative, "some action is undecided", per)


# -- counting surfaces ----------------------------------------------------------

@dataclass
class FusionResult:
    count: int | None
    exact: bool
    bounds: tuple
    class_count: int
    trace: list = field(default_factory=list)

    @property
    def status(self):
        return "exact" if self.exact else "undecided"


def _is_prime(k):
    return k >= 2 and all(k % d for d in range(2, math.isqrt(k) + 1))


def _outer_action_exists(order, outer, catalog, node_cap):
    """True/False when the catalog settles it, None otherwise."""
    if catalog is None or order not in catalog.orders() or not catalog.is_complete(order):
        return None
    try:
        return any(find_generating_vector(H, outer, node_cap=node_cap) is not None
                   for H in catalog.groups(order))
    except SearchBudgetExceeded:
        return None


def fuse_surface_count(G, sig, catalog=None, class_count=None, node_cap=DEFAULT_NODE_CAP):
    """Surfaces up to conformal equivalence carrying a G-action with ``sig``.

    Starts from the number c of epimorphism classes.  For a normal inclusion
    of prime index k into a group with no action of order k|G| with the
    outer signature, no surface subgroup is normal in the larger group, so
    its conjugates form orbits of size exactly k and the count drops to
    c/k.  The count is exact when c <= 1, when the signature is in no row
    of the table, or when such a fusion reaches 1; otherwise the result is
    undecided with bounds.
    """
    if sig.orbit_genus != 0 or sig.r != 3:
        raise DomainError("surface counting is implemented for triangular signatures")
    c = count_epimorphism_classes(G, sig) if class_count is None else class_count
    trace = [f"{c} epimorphism classes"]
    if c <= 1:
        trace.append("at most one class: nothing to fuse")
        return FusionResult(c, True, (c, c), c, trace)
    overs = singerman_overgroups(sig)
    if not overs:
        trace.append("signature in no row of the table: distinct classes give distinct surfaces")
        return FusionResult(c, True, (c, c), c, trace)
    fused = []
    for o in overs:
        k = o.index
        name = f"{o.rule.case_id} {o.outer} index {k}"
        if not o.rule.normal:
            trace.append(f"{name}: not normal, no fusion derived")
            continue
        if not _is_prime(k):
            trace.append(f"{name}: index not prime, orbit sizes not determined")
            continue
        exists = _outer_action_exists(k * G.order, o.outer, catalog, node_cap)
        if exists is None:
            trace.append(f"{name}: catalog cannot settle whether order {k * G.order} acts")
            continue
        if exists:
            trace.append(f"{name}: some group of order {k * G.order} acts, fusion is partial")
            continue
        if c % k:
            raise InconsistencyError(f"{c} classes cannot fall into orbits of size {k}")
        trace.append(f"{name}: no action of order {k * G.order}, classes fuse in orbits of size {k}")
        fused.append(c // k)
    if fused and min(fused) == 1:
        trace.append("fused to a single surface")
        return FusionResult(1, True, (1, 1), c, trace)
    upper = min(fused) if fused else c
    return FusionResult(None, False, (1, upper), c, trace)


# -- cyclic superelliptic family ---------------------------------------

def cyclic_family_exponents(n, m):
    """Exponents a with (x, x^a, x^(nm-a-1)) an (0;nm,nm,n)-generating vector of C_nm."""
    N = n * m
    return [a for a in range(1, N) if math.gcd(a, N) == 1 and math.gcd(N, (N - a - 1) % N) == m]


def cyclic_family_report(n, m):
    """(a, extends) for each exponent, extends meaning a^2 = 1 mod nm."""
    N = n * m
    return [(a, a * a % N == 1) for a in cyclic_family_exponents(n, m)]


# -- superelliptic tables ---------------------------------------------------------

@dataclass(frozen=True)
class NonmaxMatch:
    reduced: str
    outer_reduced: str
    inner: Signature
    outer: Signature
    params: tuple


def _load_nonmax():
    return _load_nonmax_cached(str(data_path("superelliptic_nonmax.json")))


@lru_cache(maxsize=2)
def _load_nonmax_cached(path):
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    return tuple((r["reduced"], Pattern.parse(r["inner"]), tuple(r.get("constraints", ())),
                  r["outer_reduced"], Pattern.parse(r["outer"])) for r in raw)


_KINDS = {"C": "C_m", "C_m": "C_m", "D": "D_m", "D_m": "D_m", "A4": "A4", "S4": "S4", "A5": "A5"}


def superelliptic_nonmax_matches(kind, sig, m=None):
    """Every row of the superelliptic tables matching (reduced group, signature).

    ``kind`` is one of C_m, D_m, A4, S4, A5; for C_m and D_m the parameter m
    is required.  S4 and A5 never extend.
    """
    k = _KINDS.get(str(kind))
    if k is None:
        raise ParameterError(f"reduced group kind must be one of C_m, D_m, A4, S4, A5; got {kind!r}")
    if k in ("S4", "A5"):
        return []
    fixed = {}
    if k in ("C_m", "D_m"):
        if m is None or m < 2:
            raise ParameterError(f"{k} needs m >= 2")
        fixed["m"] = int(m)
    out = []
    for red, inner, cons, outer_red, outer in _load_nonmax():
        if red != k:
            continue
        for b in inner.match(sig, fixed):
            if not all(eval_constraint(c, b) for c in cons):
                continue
            label = {"D_m": f"D_{b.get('m')}", "D_2m": f"D_{2 * b.get('m', 0)}"}.get(outer_red, outer_red)
            hit = NonmaxMatch(k if k not in ("C_m", "D_m") else f"{k[0]}_{b['m']}", label, sig,
                              outer.instantiate(b), tuple(sorted(b.items())))
            if hit not in out:
                out.append(hit)
    return out


def superelliptic_nonmax_tables(kind, sig, m=None):
    """The first matching (outer reduced group, outer signature), or None."""
    hits = superelliptic_nonmax_matches(kind, sig, m)
    return (hits[0].outer_reduced, hits[0].outer) if hits else None
