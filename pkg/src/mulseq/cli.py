"""``mulseq`` command line.

Exit codes: 0 pass or match, 1 certified failure or mismatch, 2 error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bases import STANDARD, basis_kind, basis_poly
from .exact import ParseError, Poly, parse_poly
from .roots import INF, classify_cubic, classify_quartic, discriminant, is_real_rooted, isolate_roots, sturm_count

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
POLY_VARIABLES = ("x", "a", "b", "r")


class CliError(Exception):
    pass


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _bound(text):
    if text in ("inf", "+inf"):
        return INF
    if text == "-inf":
        return -INF
    return _fraction(text)


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _univariate(text):
    p = parse_poly(text, variables=("x",))
    if not isinstance(p, Poly):
        p = Poly((p,))
    if not p:
        raise CliError("the zero polynomial has no roots to count")
    return p


def _kind(args):
    return basis_kind(args.basis, args.alpha)


# -- subcommands ---------------------------------------------------------------------


def cmd_basis(args):
    p = basis_poly(basis_kind(args.kind, args.alpha), args.n)
    _emit(args, {"kind": args.kind, "alpha": None if args.alpha is None else str(args.alpha), "n": args.n, "poly": str(p)}, str(p))
    return EXIT_OK


def cmd_roots(args):
    p = _univariate(args.poly)
    if args.action == "count":
        n = sturm_count(p, args.lo, args.hi)
        payload = {"poly": str(p), "interval": [str(args.lo), str(args.hi)], "distinct_real_roots": n, "real_rooted": is_real_rooted(p)}
        _emit(args, payload, f"{n} distinct real roots in ({args.lo}, {args.hi}]; real-rooted: {payload['real_rooted']}")
    elif args.action == "isolate":
        iso = isolate_roots(p, args.precision)
        rows = [{"interval": [str(lo), str(hi)], "multiplicity": m, "approx": float((lo + hi) / 2)} for (lo, hi), m in zip(iso.intervals, iso.multiplicities)]
        text = "\n".join(f"[{r['interval'][0]}, {r['interval'][1]}]  mult {r['multiplicity']}  ~{r['approx']:.10g}" for r in rows) or "no real roots"
        _emit(args, {"poly": str(p), "roots": rows}, text)
    else:
        deg = len(p.coeffs) - 1
        if deg == 3:
            tag = classify_cubic(p).value
            payload = {"poly": str(p), "degree": 3, "class": tag, "discriminant": str(discriminant(p))}
        elif deg == 4:
            qc = classify_quartic(p)
            payload = {"poly": str(p), "degree": 4, "class": qc.tag.value, "discriminant": str(qc.discriminant), "q": str(qc.q), "s": str(qc.s)}
        else:
            raise CliError("classify needs a cubic or a quartic")
        _emit(args, payload, f"{payload['class']} (discriminant {payload['discriminant']})")
    return EXIT_OK


def cmd_disc(args):
    p = parse_poly(args.poly, variables=POLY_VARIABLES)
    if not isinstance(p, Poly):
        raise CliError("constant input has no discriminant")
    d = discriminant(p, args.var)
    _emit(args, {"poly": str(p), "variable": args.var or p.var, "discriminant": str(d)}, str(d))
    return EXIT_OK


def _sequence(args):
    from .sequences import parse_sequence

    return parse_sequence(args.seq)


def cmd_check(args):
    from .multseq import TestFamily, basis_ms_test, classical_ms_test

    seq = _sequence(args)
    kind = _kind(args)
    if kind == STANDARD:
        v = classical_ms_test(seq, args.max_degree)
    else:
        v = basis_ms_test(seq, kind, args.max_degree, TestFamily(seed=args.seed, random_count=args.random))
    payload = {"sequence": str(seq), "basis": str(kind), "max_degree": args.max_degree, **v.to_dict()}
    text = f"{v.status.value}"
    if v.passed:
        text += f" through degree {v.scope} ({v.evidence})"
    elif v.witness is not None:
        text += f"\n  witness:   {v.witness}\n  transform: {v.transform}\n  {v.evidence}"
    else:
        text += f": {v.evidence}"
    _emit(args, payload, text)
    return EXIT_OK if v.passed else EXIT_FAIL


def _operator(args):
    from .multseq import DiagonalOperator

    return DiagonalOperator(_kind(args), _sequence(args))


def cmd_diffop(args):
    from .diffop import to_diffop

    rep = to_diffop(_operator(args), args.order)
    payload = {"order": rep.order, "exact": rep.exact, "guard_order": rep.guard_order, "coefficients": [str(c) for c in rep.coeffs]}
    lines = [f"p_{k}(x) = {c}" for k, c in rep.table()]
    if not rep.exact:
        lines.append(f"note: order {rep.order} does not reproduce the operator through degree {rep.guard_order}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_bb(args):
    from .diffop import bb_falsify, symbol, to_diffop

    sym = symbol(to_diffop(_operator(args), args.order))
    res = bb_falsify(sym, args.samples, args.seed, args.residual, args.margin, args.orientation)
    payload = {"symbol": str(sym), **res.to_dict()}
    text = f"{res.outcome.value} ({args.samples} samples, seed {args.seed}, orientation {args.orientation})"
    for c in res.counterexamples:
        text += f"\n  [{c.orientation}] sample {c.sample}: x0 = {c.x0}, w0 ~ {complex(c.w0):.12g}"
    _emit(args, payload, text)
    return EXIT_FAIL if res.found else EXIT_OK


def cmd_repro(args):
    from .repro import REGISTRY, run_experiment, run_suite
    from .repro.runner import dumps

    if args.list:
        for eid, exp in REGISTRY.items():
            print(f"{eid:22s} [{exp.provenance}] {exp.description}  tags={','.join(exp.tags)}")
        return EXIT_OK
    if args.all or args.filter:
        suite = run_suite(args.filter or (), args.seed)
        payload = suite.to_dict()
        text = "\n".join(r.line() for r in suite.reports) + "\n" + json.dumps(suite.totals)
        code = EXIT_OK if suite.ok else EXIT_FAIL
    elif args.id:
        if args.id not in REGISTRY:
            raise CliError(f"unknown experiment {args.id!r}")
        rep = run_experiment(args.id, args.seed)
        payload = rep.to_dict()
        text = rep.line()
        if rep.status != "match":
            text += f"\n  computed: {json.dumps(rep.computed)}\n  expected: {json.dumps(rep.expected)}"
        code = {"match": EXIT_OK, "mismatch": EXIT_FAIL}.get(rep.status, EXIT_ERROR)
        if rep.report_only and code == EXIT_FAIL:
            code = EXIT_OK
    else:
        raise CliError("give an experiment id, --all, --filter or --list")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload) + "\n")
    _emit(args, payload, text)
    return code


# -- parser --------------------------------------------------------------------------


def _add_basis(p, default="legendre"):
    p.add_argument("--basis", default=default, choices=("standard", "legendre", "hermite", "laguerre"))
    p.add_argument("--alpha", type=_fraction, default=None, help="Laguerre parameter")


def build_parser():
    from .repro import DEFAULT_SEED

    ap = argparse.ArgumentParser(prog="mulseq", description="Exact multiplier-sequence tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="print a basis polynomial")
    p.add_argument("--kind", required=True, choices=("standard", "legendre", "hermite", "laguerre"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_fraction, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("roots", help="count, isolate or classify real roots")
    p.add_argument("action", choices=("count", "isolate", "classify"))
    p.add_argument("--poly", required=True)
    p.add_argument("--lo", type=_bound, default=-INF)
    p.add_argument("--hi", type=_bound, default=INF)
    p.add_argument("--precision", type=_fraction, default=Fraction(1, 2**20))
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("disc", help="discriminant in x (or --var)")
    p.add_argument("--poly", required=True)
    p.add_argument("--var", default=None, choices=POLY_VARIABLES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_disc)

    p = sub.add_parser("check", help="finite multiplier-sequence test")
    _add_basis(p)
    p.add_argument("--seq", required=True)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--random", type=int, default=200, help="random product polynomials in the test family")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("diffop", help="differential-operator coefficients")
    _add_basis(p)
    p.add_argument("--seq", required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_diffop)

    p = sub.add_parser("bb-falsify", help="search for symbol zeros in the upper half-planes")
    _add_basis(p)
    p.add_argument("--seq", required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--residual", type=_fraction, default=Fraction(1, 10**30))
    p.add_argument("--margin", type=_fraction, default=Fraction(1, 10**20))
    p.add_argument("--orientation", choices=("both", "minus", "plus"), default="both")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_bb)

    p = sub.add_parser("repro", help="run reproduction experiments")
    p.add_argument("id", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--filter", action="append", help="tag or id; repeatable")
    p.add_argument("--list", action="store_true")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", help="also write the JSON report here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_repro)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, ParseError, ValueError, ArithmeticError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
