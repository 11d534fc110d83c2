"""Command line front end.

Every subcommand prints one JSON document (or a short text rendering) on
stdout.  Exit status: 0 on success, 1 on a computational error or a failed
survey assertion, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .charts import CHARTS, degree_of_foliation, transport
from .derivation import (CHART_VARS, DerivationError, NormalFormCoefficients, PolyDerivation,
                         is_p_closed, make_normalized)
from .driver import configuration, configuration_affine, multiset_name, survey
from .gf2k import FieldError, field_for_order
from .invariants import invariant_ring
from .poly import ParseError, parse_poly
from .rdp import QVARS, classify_rdp, dynkin_shape, resolve_dual_graph, tjurina


class InputError(Exception):
    pass


def _field(args):
    try:
        return field_for_order(args.field)
    except FieldError as e:
        raise InputError(str(e)) from None


def _parse(text, ctx, vars, what):
    try:
        return parse_poly(text, ctx, vars)
    except ParseError as e:
        raise InputError(f"{what}: {e.caret()}") from None


def _derivation(args, ctx) -> PolyDerivation:
    if args.coeffs is not None:
        if args.F is not None or args.G is not None:
            raise InputError("give either --coeffs or --F/--G, not both")
        try:
            c = NormalFormCoefficients.parse(args.coeffs, ctx)
        except ParseError as e:
            raise InputError(f"--coeffs: {e.caret()}") from None
        return make_normalized(c, ctx)
    if args.F is None or args.G is None:
        raise InputError("both --F and --G are required")
    vs = CHART_VARS[args.chart]
    return PolyDerivation(_parse(args.F, ctx, vs, "--F"), _parse(args.G, ctx, vs, "--G"),
                          args.chart)


def _germ(args, ctx):
    return _parse(args.germ, ctx, QVARS, "--germ")


def cmd_pclosed(args):
    ctx = _field(args)
    d = _derivation(args, ctx)
    ok, H = is_p_closed(d)
    return {"p_closed": ok, "H": None if H is None else str(H)}


def cmd_degree(args):
    ctx = _field(args)
    d = _derivation(args, ctx)
    n = degree_of_foliation(d)
    return {"deg_L": n, "charts": [transport(d, c).to_json() for c in CHARTS if c != d.chart]}


def cmd_invariant_ring(args):
    ctx = _field(args)
    d = _derivation(args, ctx)
    pres = invariant_ring(d, degree_bound=args.degree_bound)
    doc = {"chart": d.chart}
    doc.update(pres.to_json())
    return doc


def cmd_classify(args):
    ctx = _field(args)
    if args.germ is not None:
        f = _germ(args, ctx)
        t = classify_rdp(f)
        return {"germ": str(f), "type": str(t), "tau": tjurina(f)}
    d = _derivation(args, ctx)
    if args.affine:
        pres, pts = configuration_affine(d, extend=args.extend)
        out = []
        for sp, t in pts:
            j = sp.to_json()
            j["affine"] = [sp.ctx.format(a) for a in sp.affine]
            j["orbit_size"] = sp.degree
            j["type"] = str(t)
            out.append(j)
        types = [t for sp, t in pts for _ in range(sp.degree)]
        return {"chart": d.chart, "presentation": pres.to_json(),
                "multiset": multiset_name(types), "points": out}
    if d.chart != "U0":
        raise InputError("projective classification expects a field on U0")
    return configuration(d, extend=args.extend).to_json()


def cmd_resolve(args):
    ctx = _field(args)
    g = resolve_dual_graph(_germ(args, ctx))
    doc = g.to_json()
    shape = dynkin_shape(g)
    doc["shape"] = None if shape is None else f"{shape[0]}{shape[1]}"
    return doc


def cmd_tjurina(args):
    ctx = _field(args)
    return {"tau": tjurina(_germ(args, ctx))}


def cmd_survey(args):
    ctx = _field(args)
    if args.samples is not None and args.samples < 1:
        raise InputError("--samples must be positive")
    rep = survey(ctx, workers=args.workers, samples=args.samples, seed=args.seed)
    doc = rep.to_json(ctx)
    doc["_ok"] = rep.ok()
    return doc


# text rendering

def _text(cmd, doc) -> str:
    if cmd == "classify" and "deg_L" in doc:
        lines = [f"deg_L: {doc['deg_L']}", f"configuration: {doc['label']}", ""]
        rows = [("point", "chart", "length", "type")]
        for p in doc["points"]:
            rows.append(("(" + " : ".join(p["point"]) + ")", p["chart"], str(p["length"]),
                         p["type"]))
        w = [max(len(r[i]) for r in rows) for i in range(4)]
        for r in rows:
            lines.append("  ".join(c.ljust(w[i]) for i, c in enumerate(r)).rstrip())
        return "\n".join(lines)
    if cmd == "classify" and "multiset" in doc:
        lines = [f"relation: {doc['presentation']['relation']}",
                 f"configuration: {doc['multiset']}", ""]
        for p in doc["points"]:
            lines.append(f"({', '.join(p['affine'])})  length {p['length']}  {p['type']}")
        return "\n".join(lines)
    if cmd == "survey":
        lines = [f"field: GF({doc['field']})  mode: {doc['mode']}",
                 f"examined {doc['examined']}, accepted {doc['accepted']}, "
                 f"rejected (ii) {doc['rejected_ii']}, rejected (iii) {doc['rejected_iii']}", ""]
        for k, v in doc["histogram"].items():
            lines.append(f"{k:<24}{v:>10}")
        lines.append("")
        for k, v in doc["assertions"].items():
            lines.append(f"{'ok  ' if v else 'FAIL'} {k}")
        for v in doc["violations"]:
            lines.append(f"violation #{v['index']}: {'; '.join(v['problems'])}")
        return "\n".join(lines)
    out = []
    for k, v in doc.items():
        out.append(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    return "\n".join(out)


def _add_field(p):
    p.add_argument("--field", type=int, default=2, metavar="Q",
                   help="field size q = 2^k (default 2)")
    p.add_argument("--format", choices=("json", "text"), default="json")


def _add_delta(p):
    p.add_argument("--F", help="coefficient of d/da")
    p.add_argument("--G", help="coefficient of d/db")
    p.add_argument("--coeffs", help="normal-form coefficients, e.g. a20=1,b02=g")
    p.add_argument("--chart", choices=CHARTS, default="U0")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="frobsandwich",
        description="Quotients of P^2 by p-closed vector fields in characteristic 2.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pclosed", help="test delta^2 = H delta")
    _add_field(p)
    _add_delta(p)
    p.set_defaults(func=cmd_pclosed)

    p = sub.add_parser("degree", help="degree of the foliation")
    _add_field(p)
    _add_delta(p)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("invariant-ring", help="hypersurface presentation of the invariants")
    _add_field(p)
    _add_delta(p)
    p.add_argument("--degree-bound", type=int, default=None,
                   help="refuse generators of degree above 4 times this")
    p.set_defaults(func=cmd_invariant_ring)

    p = sub.add_parser("classify", help="singular points and their RDP types")
    _add_field(p)
    _add_delta(p)
    p.add_argument("--germ", help="classify a single germ Z^2 + f(X, Y); give f")
    p.add_argument("--affine", action="store_true",
                   help="only the affine chart of the vector field")
    ext = p.add_mutually_exclusive_group()
    ext.add_argument("--extend-auto", dest="extend", action="store_true", default=True,
                     help="extend the field to split singular points (default)")
    ext.add_argument("--no-extend", dest="extend", action="store_false",
                     help="fail when a point needs a field extension")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("resolve", help="dual graph of the minimal resolution of a germ")
    _add_field(p)
    p.add_argument("--germ", required=True, help="f in Z^2 + f(X, Y)")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("tjurina", help="Tjurina number of a germ")
    _add_field(p)
    p.add_argument("--germ", required=True, help="f in Z^2 + f(X, Y)")
    p.set_defaults(func=cmd_tjurina)

    p = sub.add_parser("survey", help="run the normal-form survey")
    _add_field(p)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $FROBSANDWICH_WORKERS or 1)")
    p.add_argument("--samples", type=int, default=None,
                   help="random sample size instead of the exhaustive run")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_survey)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.field < 2 or args.field & (args.field - 1) or args.field > 1 << 32:
        ap.exit(2, f"{ap.prog}: error: --field must be a power of 2 between 2 and 2^32\n")
    try:
        doc = args.func(args)
    except (InputError, DerivationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    ok = doc.pop("_ok", True)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(_text(args.command, doc))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
