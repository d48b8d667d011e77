"""Command line interface: ``curveaut <command> ...`` or ``python -m curveaut``.

Every command prints one document.  With ``--format json`` (the default) it
is {"command": ..., "results": [...], "meta": {...}}, validated by the bundled
schema.json; ``csv`` flattens the result rows and ``text`` prints one line
per row.  Errors go to stderr and map to exit codes 1 (usage), 2 (data),
3 (resource cap) and 4 (internal inconsistency).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import CurveAutError, UsageError
from .groups.catalog import catalog_load, catalog_validate, reference_counts
from .groups.characters import load_character_table, table_matches_group
from .search import (DEFAULT_NODE_CAP, classify, count_epimorphism_classes, count_epimorphisms,
                     count_torsion_free_homs, count_torsion_free_homs_brute,
                     count_torsion_free_homs_character, coverage)
from .signatures import (Signature, element_order_bound_poschar, hurwitz_bound, large_group_threshold,
                         poschar_bound, wiman_bound)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(p):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--catalog", help="catalog file (default: $CURVEAUT_CATALOG or the bundled one)")
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP, help="search node budget")


def build_parser():
    parser = _Parser(prog="curveaut", description="Finite group actions on Riemann surfaces.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="all (group, signature) actions in a genus")
    _common(p)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--max-order", type=int)
    p.add_argument("--orders", type=_int_list, help="only these group orders")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--counts", action="store_true", help="add hom counts and epimorphism classes")
    p.add_argument("--maximality", action="store_true", help="add a maximality verdict per record")

    p = sub.add_parser("maximal", help="maximality verdict for a group and signature")
    _common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--signature", required=True)
    p.add_argument("--strict", action="store_true", help="strict inequalities in the extension cases")

    p = sub.add_parser("count-homs", help="count homomorphisms with torsion-free kernel")
    _common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--signature", required=True)
    p.add_argument("--method", choices=("dp", "brute", "character"), default="dp")
    p.add_argument("--chartable", help="character-table file for --method character")
    p.add_argument("--epi", action="store_true", help="also count epimorphisms and their classes")

    p = sub.add_parser("surfaces", help="number of surfaces with a given action")
    _common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--signature", required=True)

    p = sub.add_parser("gap-seqs", help="Weierstrass gap sequences of a genus")
    _common(p)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--weights", action="store_true")

    p = sub.add_parser("superelliptic", help="reduced-group functions and lists")
    ssub = p.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("table1", "verify"):
        q = ssub.add_parser(name)
        _common(q)
        q.add_argument("--case", type=int, required=True)
        q.add_argument("--p", type=int, required=True)
        q.add_argument("--m", type=int)
        q.add_argument("--t", type=int)
        q.add_argument("--q", type=int)
        q.add_argument("--field", help="field spec such as 7 or 3^2")
    q = ssub.add_parser("char2")
    _common(q)
    q.add_argument("--genus", type=int, required=True)
    q = ssub.add_parser("lists")
    _common(q)
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--resolve", action="store_true", help="map GAP ids to catalog labels")

    p = sub.add_parser("bounds", help="classical bounds for a genus")
    _common(p)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--p", type=int, help="characteristic for the element-order bound")

    p = sub.add_parser("catalog", help="inspect the group catalog")
    csub = p.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("validate", "info"):
        q = csub.add_parser(name)
        _common(q)
        q.add_argument("--orders", type=_int_list)
    return parser


# -- commands -------------------------------------------------------------------

def _catalog(args):
    return catalog_load(args.catalog)


def _group(args, cat):
    return cat.find(args.group)


def cmd_classify(args):
    cat = _catalog(args)
    recs = classify(args.genus, cat, max_order=args.max_order, orders_filter=args.orders,
                    workers=args.workers, node_cap=args.node_cap, counts=args.counts)
    if args.maximality:
        from .maximality import maximality_verdict
        for r in recs:
            if r.status == "found":
                G = cat.get(*r.catalog_id)
                r.maximality = maximality_verdict(G, r.signature, cat, node_cap=args.node_cap).verdict.value
    cov = coverage(args.genus, cat, args.max_order, args.orders)
    return [r.to_json() for r in recs], {"genus": args.genus, "missing_orders": cov["missing"],
                                         "incomplete_orders": cov["incomplete"]}


def cmd_maximal(args):
    from .maximality import maximality_verdict
    cat = _catalog(args)
    G = _group(args, cat)
    sig = Signature.parse(args.signature)
    v = maximality_verdict(G, sig, cat, strict=args.strict, node_cap=args.node_cap)
    row = {"group": G.label, "signature": str(sig)}
    row.update(v.to_json())
    return [row], {}


def cmd_count_homs(args):
    cat = _catalog(args)
    G = _group(args, cat)
    sig = Signature.parse(args.signature)
    if args.method == "brute":
        n = count_torsion_free_homs_brute(G, sig)
    elif args.method == "character":
        if not args.chartable:
            raise UsageError("--method character needs --chartable")
        table = load_character_table(args.chartable)
        if not table_matches_group(table, G):
            raise UsageError("the character table does not belong to this group")
        n = count_torsion_free_homs_character(G, table, sig)
    else:
        n = count_torsion_free_homs(G, sig)
    row = {"group": G.label, "signature": str(sig), "method": args.method, "hom_count": n}
    if args.epi:
        row["epimorphisms"] = count_epimorphisms(G, sig)
        row["epi_classes"] = count_epimorphism_classes(G, sig)
    return [row], {}


def cmd_surfaces(args):
    from .maximality import fuse_surface_count
    cat = _catalog(args)
    G = _group(args, cat)
    sig = Signature.parse(args.signature)
    f = fuse_surface_count(G, sig, cat, node_cap=args.node_cap)
    return [{"group": G.label, "signature": str(sig), "count": f.count, "status": f.status,
             "bounds": list(f.bounds), "epi_classes": f.class_count, "trace": f.trace}], {}


def cmd_gap_seqs(args):
    from .weierstrass import enumerate_gap_sequences
    return [s.to_json(with_weight=args.weights) for s in enumerate_gap_sequences(args.genus)], \
        {"genus": args.genus}


def _case(args):
    from .superelliptic import table1_case
    return table1_case(args.case, args.p, m=args.m, t=args.t, q=args.q)


def cmd_superelliptic(args):
    from . import superelliptic as se
    from .ffield import format_poly, parse_field
    if args.action is None:
        raise UsageError("superelliptic needs one of: table1, verify, char2, lists")
    if args.action == "table1":
        case = _case(args)
        F = parse_field(args.field) if args.field else None
        z = se.table1_function(case, F)
        row = case.to_json()
        row.update({"field": repr(z.F), "primitive_element": z.F.primitive, "modulus": list(z.F.modulus),
                    "numerator": format_poly(z.num), "denominator": format_poly(z.den), "degree": z.degree})
        return [row], {}
    if args.action == "verify":
        case = _case(args)
        F = parse_field(args.field) if args.field else None
        inv = se.verify_invariance(case, F=F)
        ram = se.verify_ramification(case)
        return [{"invariance": inv.to_json(), "ramification": ram.to_json()}], {}
    if args.action == "char2":
        row = {"genus": args.genus, "types": [list(t) for t in se.char2_ramification_types(args.genus)]}
        if args.genus in (3, 4):
            row["groups"] = se.char2_hyperelliptic_groups(args.genus)
        return [row], {}
    ids = se.genus34_superelliptic_lists(args.genus, args.p)
    if args.resolve:
        return se.resolve_gap_ids(ids, _catalog(args)), {"genus": args.genus, "p": args.p}
    return [{"id": list(i)} for i in ids], {"genus": args.genus, "p": args.p}


def cmd_bounds(args):
    from .weierstrass import weierstrass_point_count_bounds
    g = args.genus
    w = weierstrass_point_count_bounds(g)
    row = {"genus": g, "hurwitz": hurwitz_bound(g), "wiman": wiman_bound(g),
           "large_group_threshold": large_group_threshold(g), "poschar": poschar_bound(g),
           "weierstrass_points": [w.lower, w.upper], "total_weight": w.total_weight}
    if args.p:
        row["element_order_bound"] = element_order_bound_poschar(g, args.p)
    return [row], {}


def cmd_catalog(args):
    if args.action is None:
        raise UsageError("catalog needs one of: validate, info")
    cat = _catalog(args)
    orders = set(args.orders) if args.orders else None
    if args.action == "validate":
        rep = catalog_validate(cat, orders=orders, raise_on_error=False)
        return rep["orders"], {"ok": rep["ok"], "errors": rep["errors"]}
    ref = reference_counts()
    rows = [{"order": n, "entries": len(cat.entries(n)), "complete": cat.is_complete(n),
             "reference_count": ref.get(n), "labels": [e.label for e in cat.entries(n)]}
            for n in cat.orders() if orders is None or n in orders]
    return rows, {"path": str(cat.path)}


COMMANDS = {"classify": cmd_classify, "maximal": cmd_maximal, "count-homs": cmd_count_homs,
            "surfaces": cmd_surfaces, "gap-seqs": cmd_gap_seqs, "superelliptic": cmd_superelliptic,
            "bounds": cmd_bounds, "catalog": cmd_catalog}


# -- rendering --------------------------------------------------------------------

def _cell(v):
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else v


def render(command, rows, meta, fmt):
    if fmt == "json":
        return json.dumps({"command": command, "results": rows, "meta": meta}, indent=1) + "\n"
    if fmt == "csv":
        cols = []
        for r in rows:
            cols += [k for k in r if k not in cols]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    lines = [" ".join(f"{k}={_cell(v)}" for k, v in r.items()) for r in rows]
    lines += [f"# {k}: {_cell(v)}" for k, v in meta.items()]
    return "\n".join(lines) + "\n"


def run(argv=None, out=None, err=None):
    """Run the CLI; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        name = args.command if args.command not in ("superelliptic", "catalog") else \
            f"{args.command} {args.action}"
        rows, meta = COMMANDS[args.command](args)
        out.write(render(name, rows, meta, args.format))
        return 0
    except CurveAutError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except (KeyboardInterrupt, BrokenPipeError):
        return 1
    except Exception as exc:  # anything unexpected is an internal inconsistency
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 4


def main():
    sys.exit(run())
