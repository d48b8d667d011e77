"""Groups given by presentations with a normal cyclic subgroup <r>.

Every presentation handled here has the shape: generators r, x_1, ..., x_k with
r of order n, each x_i acting on <r> by r -> r^(lambda_i), and further
relators w = r^c where w is a positive word in the x_i whose images present a
known finite group Q.  The extension is realized in normal form
r^a s(q), q in Q, where s(q) is the word along a spanning tree of the Cayley
graph of Q.  The multiplication needs the values f(q, i) defined by
s(q) x_i = r^f(q,i) s(q x_i); they are zero on tree edges and the relators give
a linear system for the rest over Z/n.  A solution yields a transitive
permutation model of size n|Q| satisfying every relation, which forces the
presented group to have exactly that order, so no coset enumeration is needed.
"""
from __future__ import annotations

from math import gcd

import numpy as np

from ..errors import ParameterError, UnsupportedError
from .construct import abelian, cyclic, dihedral, direct_product, psl2, semidirect
from .group import FiniteGroup
from .morphisms import word_tree
from .zoo import named_group


def _factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _val(x, p, cap):
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _solve_prime_power(A, b, p, e):
    """Solve A x = b over Z/p^e; returns a list or None."""
    q = p ** e
    A = [[x % q for x in row] for row in A]
    b = [x % q for x in b]
    rows, cols = len(A), len(A[0]) if A else 0
    colperm = list(range(cols))
    r = 0
    pivots = []
    while r < rows and r < cols:
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                if A[i][j]:
                    v = _val(A[i][j], p, e)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        A[r], A[i] = A[i], A[r]
        b[r], b[i] = b[i], b[r]
        for row in A:
            row[r], row[j] = row[j], row[r]
        colperm[r], colperm[j] = colperm[j], colperm[r]
        piv = A[r][r]
        unit = piv // p ** v
        inv = pow(unit, -1, q)
        for i2 in range(rows):
            if i2 != r and A[i2][r]:
                factor = (A[i2][r] // p ** v) * inv % q
                A[i2] = [(x - factor * y) % q for x, y in zip(A[i2], A[r])]
                b[i2] = (b[i2] - factor * b[r]) % q
        pivots.append(v)
        r += 1
    for i in range(r, rows):
        if b[i] % q:
            return None
    x = [0] * cols
    # the pivot rows are reduced: row i has zeros in the other pivot columns
    for i in range(r - 1, -1, -1):
        rhs = (b[i] - sum(A[i][j] * x[j] for j in range(r, cols))) % q
        v = pivots[i]
        if rhs % p ** v:
            return None
        unit = A[i][i] // p ** v
        x[i] = (rhs // p ** v) * pow(unit, -1, q) % q
    sol = [0] * cols
    for k, c in enumerate(colperm):
        sol[c] = x[k]
    return sol


def solve_mod(A, b, n):
    """A solution of the integer system A x = b modulo n, or None."""
    cols = len(A[0]) if A else 0
    if n == 1:
        return [0] * cols
    sol = [0] * cols
    mod = 1
    for p, e in _factor(n).items():
        part = _solve_prime_power(A, b, p, e)
        if part is None:
            return None
        q = p ** e
        # Chinese remaindering into the running solution
        new = []
        for s, t in zip(sol, part):
            k = ((t - s) * pow(mod, -1, q)) % q
            new.append(s + mod * k)
        sol = new
        mod *= q
    return [s % n for s in sol]


def cyclic_extension(Q, qgens, n, actions, relators, label=""):
    """Group generated by r (order n) and x_i lifting ``qgens``.

    ``actions[i]`` is lambda_i with x_i r x_i^-1 = r^lambda_i and
    ``relators`` is a list of (word, c) meaning word = r^c, where word is a
    list of generator indices.  Returns (G, r, xs) with xs the lifted
    generators, or raises ParameterError when the relations force <r> to be
    smaller than n.
    """
    k = len(qgens)
    order, parent, via = word_tree(Q, qgens)
    if len(order) != Q.order:
        raise ParameterError("the quotient generators do not generate the quotient group")
    lam = np.ones(Q.order, dtype=np.int64)
    for y in order[1:]:
        lam[y] = lam[parent[y]] * actions[via[y]] % n
    for q in range(Q.order):
        for i, g in enumerate(qgens):
            if lam[Q.mul[q, g]] != lam[q] * actions[i] % n:
                raise ParameterError("the action on <r> is not compatible with the quotient group")
    unknown = {}
    for q in range(Q.order):
        for i, g in enumerate(qgens):
            y = int(Q.mul[q, g])
            if not (parent[y] == q and via[y] == i and y != 0):
                unknown[(q, i)] = len(unknown)
    rows, rhs = [], []
    for word, c in relators:
        for q in range(Q.order):
            row = [0] * len(unknown)
            cur = q
            for i in word:
                j = unknown.get((cur, i))
                if j is not None:
                    row[j] += 1
                cur = int(Q.mul[cur, qgens[i]])
            if cur != q:
                raise ParameterError("a relator is not trivial in the quotient group")
            rows.append(row)
            rhs.append(int(lam[q]) * c % n)
    sol = solve_mod(rows, rhs, n) if unknown else []
    if sol is None:
        raise ParameterError("the relations collapse the normal cyclic subgroup; no group of the expected order")
    f = np.zeros((Q.order, k), dtype=np.int64)
    for (q, i), j in unknown.items():
        f[q, i] = sol[j]
    # c[q, q'] with s(q) s(q') = r^c s(q q'), filled parents-first in q'
    cyc = np.zeros((Q.order, Q.order), dtype=np.int64)
    ar = np.arange(Q.order)
    for y in order[1:]:
        pa, i = parent[y], via[y]
        cyc[:, y] = (cyc[:, pa] + f[Q.mul[ar, pa], i]) % n
    N = n * Q.order
    idx = np.arange(N)
    a, q = idx % n, idx // n
    A, B = a[:, None], a[None, :]
    QA, QB = q[:, None], q[None, :]
    table = Q.mul[QA, QB] * n + (A + lam[QA] * B + cyc[QA, QB]) % n
    G = FiniteGroup(table, label=label)
    r = 1 % N if n > 1 else 0
    xs = [int(g) * n + int(f[0, i]) % n for i, g in enumerate(qgens)]
    return G, r, xs


def _pair(Q, o1, o2, o12):
    """First generating pair (a, b) of Q with orders o1, o2 and ab of order o12."""
    eo = Q.element_order
    for a in np.flatnonzero(eo == o1):
        for b in np.flatnonzero(eo == o2):
            ab = Q.mul[a, b]
            if eo[ab] == o12 and Q.generates([int(a), int(b)]):
                return int(a), int(b)
    raise ParameterError(f"no ({o1},{o2},{o12}) generating pair")


def _need(cond, msg):
    if not cond:
        raise ParameterError(msg)


def _evaluate(G, symbols, word):
    x = 0
    for s, e in word:
        x = G.mul[x, G.power(symbols[s], e)]
    return int(x)


def verify_relations(G, symbols, relations):
    """Evaluate each relation (lhs, rhs) given as lists of (symbol, exponent)."""
    bad = []
    for lhs, rhs in relations:
        if _evaluate(G, symbols, lhs) != _evaluate(G, symbols, rhs):
            bad.append((lhs, rhs))
    return bad


def _rel(*terms):
    return list(terms)


def _pow(word, k):
    return word * k


CASES = {
    "cyclic": "C_mn (reduced group C_m)",
    "metacyclic": "<r, s | r^n, s^m, s r s^-1 = r^l> (reduced group C_m)",
    "dihedral_product": "D_2m x C_n",
    "G5": "r^n, s^2 = r, t^2, (st)^m, s r s^-1 = r, t r t^-1 = r^(n-1)",
    "G6": "D_2mn",
    "G7": "r^n, s^2 = r, t^2 = r^(n-1), (st)^m, s r s^-1 = r, t r t^-1 = r",
    "G8": "r^n, s^2 = r, t^2, (st)^m = r^(n/2), s r s^-1 = r, t r t^-1 = r^(n-1)",
    "G9": "r^n, s^2 = r, t^2 = r^(n-1), (st)^m = r^(n/2), s r s^-1 = r, t r t^-1 = r",
    "A4_product": "A4 x C_n",
    "G10'": "r^n, s^2, t^3, (st)^3, s r s^-1 = r, t r t^-1 = r^l",
    "G12'": "r^n, s^2, t^3 = r^(n/3), (st)^3 = r^(n/3), s r s^-1 = r, t r t^-1 = r^l",
    "G10": "r^n, s^2, t^3, (st)^3, s r s^-1 = r, t r t^-1 = r^k",
    "G13": "r^n, s^2 = r^(n/2), t^3, (st)^3, s r s^-1 = r, t r t^-1 = r^k",
    "S4_product": "S4 x C_n",
    "G16": "r^n, s^2, t^3, (st)^4, s r s^-1 = r^l, t r t^-1 = r",
    "G18": "r^n, s^2, t^3, (st)^4 = r^(n/2), s r s^-1 = r^l, t r t^-1 = r",
    "G20": "r^n, s^2 = r^(n/2), t^3, (st)^4, s r s^-1 = r^l, t r t^-1 = r",
    "G22": "r^n, s^2 = r^(n/2), t^3, (st)^4 = r^(n/2), s r s^-1 = r^l, t r t^-1 = r",
    "A5_product": "A5 x C_n",
    "A5_central": "r^n, s^2 = t^3 = (st)^5 = r^(n/2), s and t centralize r",
    "U_product": "C_p^t x C_n",
    "U_ext": "r^n, s_i^p, [s_i, s_j], s_i r s_i^-1 = r^l",
    "Km_ext": "r^n, s_i^p, v^m, [s_i, s_j], v r v^-1 = r, s_i r s_i^-1 = r^l, s_i v s_i^-1 = v^k",
    "Km_cyclic": "r^(nm), s_i^p, [s_i, s_j], s_i r s_i^-1 = r^l",
    "PSL_product": "PSL(2,q) x C_n",
    "PGL_product": "PGL(2,q) x C_n",
    "SL23": "SL(2,3)",
}


def construct_presented_th14(case, n=None, m=None, l=None, k=None, p=None, t=None, q=None):
    """Build the group of the named presentation case and check its relations.

    Returns the FiniteGroup; its attribute ``presentation`` holds the symbol
    table (element indices of r, s, t, ...) and the verified relations.
    """
    if case not in CASES:
        raise ParameterError(f"unknown presentation case {case!r}; known: {sorted(CASES)}")
    need_n = case not in ("SL23",)
    if need_n:
        _need(isinstance(n, int) and n >= 1, "n must be a positive integer")
    build = _BUILDERS[case]
    G, symbols, relations = build(n=n, m=m, l=l, k=k, p=p, t=t, q=q)
    bad = verify_relations(G, symbols, relations)
    if bad:
        raise ParameterError(f"{case}: relations fail on the constructed group: {bad[:2]}")
    G.presentation = {"case": case, "symbols": symbols, "relations": relations}
    return G


def _unit_root(x, n, e, name):
    _need(x is not None, f"parameter {name} is required")
    _need(gcd(x, n) == 1, f"({name},n)=1 is required")
    _need(pow(x, e, n) == 1 % n, f"{name}^{e} = 1 mod n is required")


def _b_cyclic(n, m, **_):
    _need(m is not None and m >= 1, "m is required")
    G = cyclic(m * n)
    return G, {"r": m % (m * n) if m * n > 1 else 0, "s": 1 % (m * n)}, [
        (_rel(("s", m * n)), [])]


def _b_metacyclic(n, m, l, **_):
    _need(m is not None and m >= 1, "m is required")
    _unit_root(l, n, m, "l")
    G = semidirect(n, l, m)
    r, s = 1 % G.order, n % G.order
    return G, {"r": r, "s": s}, [
        (_rel(("r", n)), []), (_rel(("s", m)), []),
        (_rel(("s", 1), ("r", 1), ("s", -1)), _rel(("r", l)))]


def _b_dihedral_product(n, m, **_):
    _need(m is not None and m >= 1, "m is required")
    G = direct_product(dihedral(m), cyclic(n), label=f"D{2 * m}xC{n}")
    return G, {"r": 1 % G.order if n > 1 else 0}, [(_rel(("r", n)), [])]


def _dihedral_family(name, tau, delta, t_inverts):
    def build(n, m, **_):
        _need(m is not None and m >= 1, "m is required")
        if delta:
            _need(n % 2 == 0, "n must be even")
        Q = dihedral(m)
        a, b = _pair(Q, 2, 2, m) if m > 2 else _small_dihedral_pair(Q, m)
        tv = (n - 1) % n if tau else 0
        dv = n // 2 if delta else 0
        acts = [1 % n, (n - 1) % n if t_inverts else 1 % n]
        rels = [([0, 0], 1), ([1, 1], tv), ([0, 1] * m, dv)]
        G, r, (s, t) = cyclic_extension(Q, [a, b], n, acts, rels, label=name)
        relations = [
            (_rel(("r", n)), []), (_rel(("s", 2)), _rel(("r", 1))), (_rel(("t", 2)), _rel(("r", tv))),
            (_pow(_rel(("s", 1), ("t", 1)), m), _rel(("r", dv))),
            (_rel(("s", 1), ("r", 1), ("s", -1)), _rel(("r", 1))),
            (_rel(("t", 1), ("r", 1), ("t", -1)), _rel(("r", acts[1]))),
        ]
        return G, {"r": r, "s": s, "t": t}, relations
    return build


def _small_dihedral_pair(Q, m):
    """Two involutions with product of order m for m <= 2 (quotients D_2, D_4)."""
    eo = Q.element_order
    for a in range(Q.order):
        for b in range(Q.order):
            if eo[a] <= 2 and eo[b] <= 2 and eo[Q.mul[a, b]] == m and Q.generates([a, b]):
                return a, b
    raise ParameterError("no generating pair of involutions")


def _b_g6(n, m, **_):
    _need(m is not None and m >= 1, "m is required")
    G = dihedral(m * n)
    return G, {"x": 2 % G.order, "y": 1}, [(_rel(("x", m * n)), []), (_rel(("y", 2)), [])]


def _triangle_family(name, Qname, o12, s2, t3, st, s_act, t_act, need=None):
    """Extensions of the (2,3,o12) triangle quotient A4, S4 or A5."""
    def build(n, l=None, k=None, **_):
        lk = l if l is not None else k
        if s_act == "x" or t_act == "x":
            _unit_root(lk, n, 2 if Qname == "S4" else 3, "l" if l is not None or k is None else "k")
        if need:
            _need(n % need == 0, f"n must be divisible by {need}")
        Q = named_group(Qname)
        a, b = _pair(Q, 2, 3, o12)

        def val(spec):
            return 0 if spec == 0 else n // spec
        acts = [lk % n if s_act == "x" else 1 % n, lk % n if t_act == "x" else 1 % n]
        rels = [([0, 0], val(s2)), ([1, 1, 1], val(t3)), ([0, 1] * o12, val(st))]
        G, r, (s, t) = cyclic_extension(Q, [a, b], n, acts, rels, label=name)
        relations = [
            (_rel(("r", n)), []), (_rel(("s", 2)), _rel(("r", val(s2)))), (_rel(("t", 3)), _rel(("r", val(t3)))),
            (_pow(_rel(("s", 1), ("t", 1)), o12), _rel(("r", val(st)))),
            (_rel(("s", 1), ("r", 1), ("s", -1)), _rel(("r", acts[0]))),
            (_rel(("t", 1), ("r", 1), ("t", -1)), _rel(("r", acts[1]))),
        ]
        return G, {"r": r, "s": s, "t": t}, relations
    return build


def _product_with(Qname):
    def build(n, **_):
        Q = named_group(Qname)
        G = direct_product(Q, cyclic(n), label=f"{Qname}xC{n}")
        return G, {"r": 1 % G.order if n > 1 else 0}, [(_rel(("r", n)), [])]
    return build


def _elementary(p, t):
    _need(p is not None and _is_prime(p) and p != 2, "p must be an odd prime (the characteristic)")
    _need(t is not None and t >= 1, "t must be a positive integer")
    return abelian([p] * t)


def _is_prime(x):
    return x >= 2 and all(x % d for d in range(2, int(x ** 0.5) + 1))


def _basis_elements(Q, p, t):
    # abelian([p]*t) indexes (e_1, ..., e_t) in mixed radix with the last coordinate fastest
    return [p ** (t - 1 - i) for i in range(t)]


def _commutator_relators(t, p, offset=0):
    rels = []
    for i in range(t):
        rels.append(([offset + i] * p, 0))
        for j in range(i + 1, t):
            rels.append(([offset + i, offset + j] + [offset + i] * (p - 1) + [offset + j] * (p - 1), 0))
    return rels


def _b_u_product(n, p, t, **_):
    U = _elementary(p, t)
    G = direct_product(U, cyclic(n), label=f"C{p}^{t}xC{n}")
    return G, {"r": 1 % G.order if n > 1 else 0}, [(_rel(("r", n)), [])]


def _b_u_ext(n, p, t, l, **_):
    Q = _elementary(p, t)
    _unit_root(l, n, p, "l")
    gens = _basis_elements(Q, p, t)
    G, r, xs = cyclic_extension(Q, gens, n, [l % n] * t, _commutator_relators(t, p), label=f"C{n}:C{p}^{t}")
    syms = {"r": r}
    relations = [(_rel(("r", n)), [])]
    for i, x in enumerate(xs):
        syms[f"s{i + 1}"] = x
        relations.append((_rel((f"s{i + 1}", p)), []))
        relations.append((_rel((f"s{i + 1}", 1), ("r", 1), (f"s{i + 1}", -1)), _rel(("r", l))))
        for j in range(i):
            relations.append((_rel((f"s{i + 1}", 1), (f"s{j + 1}", 1)), _rel((f"s{j + 1}", 1), (f"s{i + 1}", 1))))
    return G, syms, relations


def _b_km_ext(n, m, p, t, l, k, **_):
    _need(m is not None and m >= 1, "m is required")
    _elementary(p, t)
    _need((p ** t - 1) % m == 0, "m must divide p^t - 1")
    _unit_root(l, n, p, "l")
    _unit_root(k, m, p, "k")
    # quotient: pairs (a, e) = v^a s^e with s_i v s_i^-1 = v^k
    def op(x, y):
        a, e = x
        b, f = y
        w = sum(e)
        return ((a + pow(k, w, m) * b) % m, tuple((u + v) % p for u, v in zip(e, f)))
    ident = (0, (0,) * t)
    sgens = [(0, tuple(1 if j == i else 0 for j in range(t))) for i in range(t)]
    Q = FiniteGroup.from_closure(sgens + [(1 % m, (0,) * t)], op, ident, label="Q")
    qgens = [Q.element_index[g] for g in sgens] + [Q.element_index[(1 % m, (0,) * t)]]
    v = t
    rels = _commutator_relators(t, p) + [([v] * m, 0)]
    for i in range(t):
        rels.append(([i, v] + [i] * (p - 1) + [v] * ((m - k) % m), 0))
    G, r, xs = cyclic_extension(Q, qgens, n, [l % n] * t + [1 % n], rels, label="Km-ext")
    syms = {"r": r, "v": xs[-1]}
    relations = [(_rel(("r", n)), []), (_rel(("v", m)), []), (_rel(("v", 1), ("r", 1), ("v", -1)), _rel(("r", 1)))]
    for i in range(t):
        s = f"s{i + 1}"
        syms[s] = xs[i]
        relations += [(_rel((s, p)), []), (_rel((s, 1), ("r", 1), (s, -1)), _rel(("r", l))),
                      (_rel((s, 1), ("v", 1), (s, -1)), _rel(("v", k)))]
    return G, syms, relations


def _b_km_cyclic(n, m, p, t, l, **_):
    _need(m is not None and m >= 1, "m is required")
    Q = _elementary(p, t)
    N = n * m
    _unit_root(l, N, p, "l")
    gens = _basis_elements(Q, p, t)
    G, r, xs = cyclic_extension(Q, gens, N, [l % N] * t, _commutator_relators(t, p), label="Km-cyclic")
    syms = {"r": r}
    relations = [(_rel(("r", N)), [])]
    for i, x in enumerate(xs):
        s = f"s{i + 1}"
        syms[s] = x
        relations += [(_rel((s, p)), []), (_rel((s, 1), ("r", 1), (s, -1)), _rel(("r", l)))]
    return G, syms, relations


def _b_linear_product(kind):
    def build(n, q, **_):
        _need(q is not None and _is_prime(q) and q > 2, "q must be an odd prime")
        if kind == "PSL":
            Q = psl2(q)
        else:
            Q = named_group(f"PGL(2,{q})") if q == 5 else _pgl2(q)
        G = direct_product(Q, cyclic(n), label=f"{kind}(2,{q})xC{n}")
        return G, {"r": 1 % G.order if n > 1 else 0}, [(_rel(("r", n)), [])]
    return build


def _pgl2(q):
    from .zoo import _matrix_group
    g = next(x for x in range(2, q) if all(pow(x, (q - 1) // d, q) != 1 for d in _factor(q - 1)))
    return _matrix_group([(1, 1, 0, 1), (0, q - 1, 1, 0), (g, 0, 0, 1)], q, f"PGL(2,{q})", projective=True)


def _b_sl23(**_):
    G = named_group("SL(2,3)")
    return G, {}, []


def _unsupported(**_):
    raise UnsupportedError("case not supported")


_BUILDERS = {
    "cyclic": _b_cyclic,
    "metacyclic": _b_metacyclic,
    "dihedral_product": _b_dihedral_product,
    "G5": _dihedral_family("G5", tau=False, delta=False, t_inverts=True),
    "G6": _b_g6,
    "G7": _dihedral_family("G7", tau=True, delta=False, t_inverts=False),
    "G8": _dihedral_family("G8", tau=False, delta=True, t_inverts=True),
    "G9": _dihedral_family("G9", tau=True, delta=True, t_inverts=False),
    "A4_product": _product_with("A4"),
    "G10'": _triangle_family("G10'", "A4", 3, 0, 0, 0, 1, "x"),
    "G12'": _triangle_family("G12'", "A4", 3, 0, 3, 3, 1, "x", need=3),
    "G10": _triangle_family("G10", "A4", 3, 0, 0, 0, 1, "x"),
    "G13": _triangle_family("G13", "A4", 3, 2, 0, 0, 1, "x", need=2),
    "S4_product": _product_with("S4"),
    "G16": _triangle_family("G16", "S4", 4, 0, 0, 0, "x", 1),
    "G18": _triangle_family("G18", "S4", 4, 0, 0, 2, "x", 1, need=2),
    "G20": _triangle_family("G20", "S4", 4, 2, 0, 0, "x", 1, need=2),
    "G22": _triangle_family("G22", "S4", 4, 2, 0, 2, "x", 1, need=2),
    "A5_product": _product_with("A5"),
    "A5_central": _triangle_family("A5_central", "A5", 5, 2, 2, 2, 1, 1, need=2),
    "U_product": _b_u_product,
    "U_ext": _b_u_ext,
    "Km_ext": _b_km_ext,
    "Km_cyclic": _b_km_cyclic,
    "PSL_product": _b_linear_product("PSL"),
    "PGL_product": _b_linear_product("PGL"),
    "SL23": _b_sl23,
}
