"""Bundled catalog of small groups, stored as permutation generators.

Each line of the catalog file is a JSON object::

    {"order": 6, "index": 1, "label": "D6", "generators": [[...], ...],
     "complete_order": true, "source": "..."}

Groups are rebuilt from their generators on first access.  Completeness is a
per-order claim; where a reference group count is bundled the claim is
checked against it.
"""
from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..errors import ParseError, ValidationError
from .group import FiniteGroup, check_axioms
from .morphisms import find_isomorphism, fingerprint
from .zoo import canonical_name, named_group

ENV_VAR = "CURVEAUT_CATALOG"
_FIELDS = ("order", "index", "label", "generators", "complete_order", "source")


def data_path(name):
    return resources.files("curveaut") / "data" / name


@lru_cache(maxsize=None)
def reference_counts():
    """Number of isomorphism types of groups of order n (bundled table)."""
    raw = json.loads(data_path("group_counts.json").read_text())
    return {int(k): int(v) for k, v in raw["counts"].items()}


@lru_cache(maxsize=None)
def gap_id_table():
    """GAP identifiers pinned to structural names, {(order, n): name}."""
    raw = json.loads(data_path("gap_ids.json").read_text())
    return {tuple(int(x) for x in k.split(",")): v for k, v in raw["pinned"].items()}


class CatalogEntry:
    def __init__(self, order, index, label, generators, complete, source):
        self.order = order
        self.index = index
        self.label = label
        self.generators = generators
        self.complete = complete
        self.source = source
        self._group = None

    @property
    def group(self):
        if self._group is None:
            G = FiniteGroup.from_permutations(
                self.generators, label=self.label, catalog_id=(self.order, self.index),
                limit=max(self.order, 1))
            if G.order != self.order:
                raise ValidationError(
                    f"catalog entry {self.order}:{self.index} ({self.label}) generates a group of order {G.order}")
            self._group = G
        return self._group


class GroupCatalog:
    def __init__(self, entries, path=None):
        self.path = path
        self._entries = {}
        for e in entries:
            self._entries.setdefault(e.order, []).append(e)
        for lst in self._entries.values():
            lst.sort(key=lambda e: e.index)
        self.completeness = {n: all(e.complete for e in lst) for n, lst in self._entries.items()}
        self.provenance = {(e.order, e.index): e.source for lst in self._entries.values() for e in lst}

    def orders(self):
        return sorted(self._entries)

    def entries(self, order):
        return list(self._entries.get(order, []))

    def groups(self, order):
        return [e.group for e in self._entries.get(order, [])]

    def is_complete(self, order):
        return self.completeness.get(order, False)

    def get(self, order, index):
        for e in self._entries.get(order, []):
            if e.index == index:
                return e.group
        raise KeyError(f"no catalog entry {order}:{index}")

    def __iter__(self):
        for n in self.orders():
            yield from self._entries[n]

    def __len__(self):
        return sum(len(v) for v in self._entries.values())

    def identify(self, G):
        """Catalog id of the entry isomorphic to G, or None."""
        for e in self._entries.get(G.order, []):
            H = e.group
            if fingerprint(H) == fingerprint(G) and find_isomorphism(G, H) is not None:
                return (e.order, e.index)
        return None

    def find(self, selector):
        """Resolve a selector: ``order:index``, a GAP id ``gap:order,n`` or a
        structural name such as ``C5``, ``D12``, ``C2xC2`` or ``V4``."""
        s = selector.strip()
        if s.startswith("gap:"):
            key = tuple(int(x) for x in s[4:].split(","))
            name = gap_id_table().get(key)
            if name is None:
                raise ValidationError(f"GAP id {key} is not pinned in the bundled table")
            s = name
        elif ":" in s and all(p.strip().isdigit() for p in s.split(":")):
            o, i = (int(p) for p in s.split(":"))
            try:
                return self.get(o, i)
            except KeyError:
                raise ValidationError(f"no catalog entry {o}:{i}") from None
        s = canonical_name(s)
        matches = [e for lst in self._entries.values() for e in lst if e.label == s]
        if len(matches) == 1:
            return matches[0].group
        if len(matches) > 1:
            raise ValidationError(f"group name {selector!r} is ambiguous in the catalog")
        try:
            G = named_group(s)
        except Exception as exc:
            raise ValidationError(f"cannot resolve group {selector!r}: {exc}") from None
        cid = self.identify(G)
        if cid is None:
            raise ValidationError(f"group {selector!r} (order {G.order}) is not in the catalog")
        return self.get(*cid)


def _parse_line(line, lineno):
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", lineno) from None
    if not isinstance(rec, dict):
        raise ParseError("record is not an object", lineno)
    missing = [f for f in _FIELDS if f not in rec]
    if missing:
        raise ParseError(f"missing fields {missing}", lineno)
    if not isinstance(rec["order"], int) or rec["order"] < 1 or not isinstance(rec["index"], int):
        raise ParseError("order and index must be positive integers", lineno)
    gens = rec["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, list) and all(isinstance(x, int) for x in g) for g in gens):
        raise ParseError("generators must be lists of integers", lineno)
    return CatalogEntry(rec["order"], rec["index"], str(rec["label"]), gens,
                        bool(rec["complete_order"]), str(rec["source"]))


def default_catalog_path():
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(data_path("catalog.jsonl")))


def catalog_load(path=None):
    """Parse a catalog file (default: $CURVEAUT_CATALOG or the bundled one)."""
    path = Path(path) if path is not None else default_catalog_path()
    entries = []
    seen = set()
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            e = _parse_line(line, lineno)
            if (e.order, e.index) in seen:
                raise ParseError(f"duplicate id {e.order}:{e.index}", lineno)
            seen.add((e.order, e.index))
            entries.append(e)
    return GroupCatalog(entries, path=path)


@lru_cache(maxsize=4)
def _cached_load(path):
    return catalog_load(path)


def bundled_catalog():
    return _cached_load(str(default_catalog_path()))


def catalog_validate(catalog, orders=None, check_isomorphism=True, raise_on_error=True):
    """Check every entry and the per-order claims.

    Returns a report dict: per order the entry count, completeness claim,
    reference count (when bundled) and status.  Raises ValidationError on the
    first failure unless ``raise_on_error`` is false.
    """
    ref = reference_counts()
    report = {"orders": [], "errors": []}

    def fail(msg):
        report["errors"].append(msg)
        if raise_on_error:
            raise ValidationError(msg)

    for n in catalog.orders():
        if orders is not None and n not in orders:
            continue
        entries = catalog.entries(n)
        groups = []
        for e in entries:
            try:
                G = e.group
                check_axioms(G)
            except ValidationError as exc:
                fail(f"entry {e.order}:{e.index} ({e.label}): {exc}")
                continue
            groups.append((e, G))
        if check_isomorphism:
            for i, (e1, G1) in enumerate(groups):
                for e2, G2 in groups[:i]:
                    if fingerprint(G1) == fingerprint(G2) and find_isomorphism(G1, G2) is not None:
                        fail(f"entries {n}:{e2.index} and {n}:{e1.index} are isomorphic")
        claim = catalog.is_complete(n)
        if claim and n in ref and ref[n] != len(entries):
            fail(f"order {n} is flagged complete with {len(entries)} entries but there are {ref[n]} groups")
        report["orders"].append({
            "order": n, "entries": len(entries), "complete": claim,
            "reference_count": ref.get(n),
        })
    report["ok"] = not report["errors"]
    return report
