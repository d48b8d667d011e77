"""Character tables with exact cyclotomic entries.

Abelian tables are computed directly.  Tables of nonabelian groups are read
from JSON files; each column is described only by the order of its class
representative and the class size, which is all the triangle-count formula
needs.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import ParseError, UnsupportedError, ValidationError
from .construct import cyclic
from .cyclotomic import Cyclotomic
from .morphisms import extend_to_homomorphism


@dataclass(frozen=True)
class CharacterTable:
    exponent: int
    values: tuple          # rows of Cyclotomic, one column per class
    degrees: tuple
    class_orders: tuple    # order of each class representative
    class_sizes: tuple
    group_order: int
    group_id: tuple | None = None

    def __len__(self):
        return len(self.values)

    def orthogonality_defect(self):
        """Pairs (i, j) whose inner product differs from |G| delta_ij."""
        bad = []
        n = self.group_order
        for i, ri in enumerate(self.values):
            for j, rj in enumerate(self.values[: i + 1]):
                s = Cyclotomic.integer(self.exponent, 0)
                for size, a, b in zip(self.class_sizes, ri, rj):
                    s = s + (a * b.conj()) * size
                if s != (n if i == j else 0):
                    bad.append((i, j))
        return bad

    def column_orthogonality_defect(self):
        bad = []
        for c1 in range(len(self.class_sizes)):
            for c2 in range(c1 + 1):
                s = Cyclotomic.integer(self.exponent, 0)
                for row in self.values:
                    s = s + row[c1] * row[c2].conj()
                want = self.group_order // self.class_sizes[c1] if c1 == c2 else 0
                if s != want:
                    bad.append((c1, c2))
        return bad

    def validate(self):
        if len(self.values) != len(self.class_sizes):
            raise ValidationError(
                f"character table has {len(self.values)} rows but {len(self.class_sizes)} classes")
        if sum(self.class_sizes) != self.group_order:
            raise ValidationError("class sizes do not sum to the group order")
        try:
            ident = next(k for k, (o, s) in enumerate(zip(self.class_orders, self.class_sizes)) if o == 1 and s == 1)
        except StopIteration:
            raise ValidationError("no identity class (rep_order 1, size 1)") from None
        for i, row in enumerate(self.values):
            if row[ident] != self.degrees[i]:
                raise ValidationError(f"row {i}: degree {self.degrees[i]} differs from the value at the identity")
        bad = self.orthogonality_defect()
        if bad:
            raise ValidationError(f"row orthogonality fails for row pairs {bad[:5]}")
        return self


def _element_hom_candidates(G, gens, N):
    """Exponent choices e_i (image zeta^e_i of gens[i]) compatible with element orders."""
    out = []
    for g in gens:
        o = int(G.element_order[g])
        step = N // o
        out.append(range(0, N, step))
    return out


def abelian_character_table(G):
    """The |G| linear characters of an abelian group, over exponent(G) roots of unity."""
    if not G.is_abelian:
        raise UnsupportedError("only abelian character tables are computed; nonabelian tables must be ingested")
    N = G.exponent
    C = cyclic(N)
    gens = list(G.generators)
    rows = []
    if not gens:
        rows.append(np.zeros(1, dtype=np.int64))
    else:
        for exps in itertools.product(*_element_hom_candidates(G, gens, N)):
            phi = extend_to_homomorphism(G, gens, list(exps), C)
            if phi is not None:
                rows.append(phi)
    if len(rows) != G.order:
        raise ValidationError(f"found {len(rows)} linear characters for an abelian group of order {G.order}")
    rows.sort(key=lambda r: tuple(r.tolist()))
    classes = G.classes
    reps = classes.representatives
    zetas = [Cyclotomic.zeta(N, k) for k in range(N)]
    values = tuple(tuple(zetas[int(r[x])] for x in reps) for r in rows)
    return CharacterTable(
        exponent=N, values=values, degrees=tuple(1 for _ in rows),
        class_orders=tuple(int(G.element_order[x]) for x in reps),
        class_sizes=tuple(classes.sizes), group_order=G.order, group_id=G.catalog_id)


def load_character_table(path):
    """Read a character-table JSON file and check it exactly."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        N = int(raw["exponent"])
        classes = raw["classes"]
        chars = raw["characters"]
        gid = tuple(raw["group"]) if raw.get("group") is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed character table: {exc}") from None
    orders = tuple(int(c["rep_order"]) for c in classes)
    sizes = tuple(int(c["size"]) for c in classes)
    values = tuple(tuple(Cyclotomic(N, [int(x) for x in v]) for v in row) for row in chars)
    ident = next((k for k, o in enumerate(orders) if o == 1), None)
    if ident is None:
        raise ValidationError("character table has no identity class")
    degrees = []
    for row in values:
        d = row[ident]
        if not d.is_integer() or d.to_int() <= 0:
            raise ValidationError("character degree is not a positive integer")
        degrees.append(d.to_int())
    table = CharacterTable(exponent=N, values=values, degrees=tuple(degrees), class_orders=orders,
                           class_sizes=sizes, group_order=sum(sizes), group_id=gid)
    return table.validate()


def table_matches_group(table, G):
    """True when the class data (rep order, size) agrees with G as a multiset."""
    cl = G.classes
    mine = sorted((int(G.element_order[r]), s) for r, s in zip(cl.representatives, cl.sizes))
    return table.group_order == G.order and mine == sorted(zip(table.class_orders, table.class_sizes))


def table_to_json(table):
    return {
        "group": list(table.group_id) if table.group_id else None,
        "exponent": table.exponent,
        "classes": [{"rep_order": o, "size": s} for o, s in zip(table.class_orders, table.class_sizes)],
        "characters": [[list(v.c) for v in row] for row in table.values],
    }
