"""Command-line front end.

Subcommands::

    hopflambda enhance EXPR | --expr EXPR | --file PATH  [--method linking|whitehead|both] [--json]
    hopflambda braid "B3: s1 s2^-1"
    hopflambda plumb '{"signs": ["+", "-"], "edges": [[0, 1]]}'
    hopflambda trace --expr "F = z*w" --which minus --q 0,0,1 --out curves.csv
    hopflambda check [--n-random 20] [--seed 0]

Exit codes: 0 success (all checks pass), 1 usage or runtime error, 2 a check failed.

JSON report keys (``enhance --json``): map_source, radius, seed, method, lambda,
rho, mu, mirror_lambda, lambda_estimate {value, raw, residual, method,
diagnostics}, rho_estimate {...}, estimates {lambda|rho: {method: ...}},
checks [{name, pass, detail}], all_checks_pass, timings, timestamp.  Only
``timestamp`` varies between identical runs; ``timings`` stays empty unless
``--timings`` is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import checks as _checks
from .combinat import (PlumbingTree, closed_braid_components, exponent_sum, hirasawa_lambda,
                       parse_braid, plumbing_invariants, plumbing_mirror)
from .config import METHODS, RunConfig
from .dsl import parse_map
from .enhancement import full_report, sphere_map
from .errors import HopfLambdaError
from .hopf.tracing import trace_all_preimages, write_curves_csv

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2

GRAMMAR_HELP = """map syntax:
  f = <poly>; g = <poly>     real form in x, y, u, v
  F = <expr>                 complex form in z = x+iy, w = u+iv, conj(z), conj(w), i
operators, tightest first: ^ (integer exponent), unary -, *, binary + and -"""


def _read_source(args) -> str:
    given = [s for s in (args.map, args.expr) if s is not None]
    if args.file is not None:
        with open(args.file) as fh:
            given.append(fh.read())
    if len(given) != 1:
        raise UsageError("give the map exactly once: positional, --expr or --file")
    return given[0]


class UsageError(Exception):
    pass


def _print_report(report, out):
    d = report.to_dict()
    print(f"map      {d['map_source']}", file=out)
    print(f"radius   {d['radius']:g}    seed {d['seed']}    method {d['method']}", file=out)
    if report.computed:
        for key, est in (("lambda", report.lambda_estimate), ("rho", report.rho_estimate)):
            extra = ""
            if est.method == "whitehead":
                extra = f"  stderr {est.diagnostics['stderr']:.3g}"
            print(f"{key:<8} {d[key]:>3}   raw {est.raw:+.6f}  residual {est.residual:.2e}{extra}",
                  file=out)
        print(f"mu       {d['mu']:>3}", file=out)
        if d["mirror_lambda"] is not None:
            print(f"lambda(mirror) {d['mirror_lambda']}", file=out)
    for c in report.checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}", file=out)
    for k, v in report.timings.items():
        print(f"time {k}: {v:.3f} s", file=out)


def cmd_enhance(args, out=None) -> int:
    out = out or sys.stdout
    src = _read_source(args)
    F = parse_map(src)
    config = RunConfig(method=args.method, radius=args.radius, seed=args.seed,
                       budget=args.budget, step=args.step,
                       output="json" if args.json else "text",
                       curve_export_path=args.export_curves, threads=args.threads,
                       cutoff=args.cutoff, mirror_check=not args.no_mirror,
                       check_radii=tuple(args.check_radius or ()), timings=args.timings)
    want_curves = config.curve_export_path is not None and "linking" in config.methods
    curves = {} if want_curves else None
    report = full_report(F, config, curves=curves)

    if not report.computed:
        # the isolation check is a precondition, not a soft check
        print(report.checks[0].detail, file=sys.stderr)
        if config.output == "json":
            print(json.dumps(report.to_dict(), indent=2, sort_keys=True), file=out)
        return EXIT_ERROR

    if want_curves:
        stem, ext = os.path.splitext(config.curve_export_path)
        for which, tag in (("+", "plus"), ("-", "minus")):
            flat = [c for group in curves[which] for c in group]
            write_curves_csv(flat, f"{stem}_{tag}{ext or '.csv'}")

    if config.output == "json":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True), file=out)
    else:
        if args.radius == 1.0:
            print("note: working radius 1.0; for maps that are not quasi-homogeneous the "
                  "Milnor radius may be smaller (use --radius)", file=sys.stderr)
        _print_report(report, out)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_braid(args, out=None) -> int:
    out = out or sys.stdout
    b = parse_braid(args.word)
    row = {"braid": str(b), "lambda": hirasawa_lambda(b), "exponent_sum": exponent_sum(b),
           "strands": b.n, "components": closed_braid_components(b)}
    if args.json:
        print(json.dumps(row, sort_keys=True), file=out)
    else:
        print(f"{row['braid']}\nlambda={row['lambda']} e={row['exponent_sum']} "
              f"n={row['strands']} components={row['components']}", file=out)
    return EXIT_OK


def cmd_plumb(args, out=None) -> int:
    out = out or sys.stdout
    text = args.tree
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    tree = PlumbingTree.from_json(text)
    lam, mu = plumbing_invariants(tree)
    lam_m, _ = plumbing_invariants(plumbing_mirror(tree))
    row = {"lambda": lam, "mu": mu, "mirror_lambda": lam_m}
    if args.json:
        print(json.dumps(row, sort_keys=True), file=out)
    else:
        print(f"lambda={lam} mu={mu} lambda(mirror)={lam_m}", file=out)
    return EXIT_OK


def _parse_q(text: str) -> np.ndarray:
    try:
        q = np.array([float(c) for c in text.split(",")])
    except ValueError:
        raise UsageError(f"--q must be three comma-separated numbers, got {text!r}") from None
    if q.shape != (3,):
        raise UsageError("--q must have three components")
    if abs(np.linalg.norm(q) - 1.0) > 1e-9:
        raise UsageError(f"--q must be a unit vector, |q| = {np.linalg.norm(q):.6g}")
    return q


def cmd_trace(args, out=None) -> int:
    out = out or sys.stdout
    q = _parse_q(args.q)
    F = parse_map(_read_source(args))
    p = sphere_map(F, args.which, args.radius)
    curves = trace_all_preimages(p, q, step=args.step)
    if not curves:
        print(f"no preimage: q = {args.q} is not attained by the {args.which} triple", file=out)
        return EXIT_OK
    write_curves_csv(curves, args.out)
    for k, c in enumerate(curves):
        print(f"component {k}: {len(c)} points, length {c.length:.6f}", file=out)
    print(f"wrote {len(curves)} curve(s) to {args.out}", file=out)
    return EXIT_OK


def cmd_check(args, out=None) -> int:
    out = out or sys.stdout
    rows = _checks.run_identity_suite(n_random=args.n_random, seed=args.seed,
                                      n_points=args.points)
    width = max(len(r.name) for r in rows)
    print(f"{'map':<{width}}  {'norm':>9}  {'plucker':>9}  roundtrip  result", file=out)
    for r in rows:
        print(f"{r.name:<{width}}  {r.norm_defect:9.2e}  {r.plucker_defect:9.2e}  "
              f"{'yes' if r.roundtrip else 'NO':>9}  {'PASS' if r.passed else 'FAIL'}", file=out)
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} passed", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def _map_args(sp, positional=True):
    if positional:
        sp.add_argument("map", nargs="?", help="map in the DSL (same as --expr)")
    else:
        sp.set_defaults(map=None)
    sp.add_argument("--expr", help="map in the DSL")
    sp.add_argument("--file", help="file holding the map in the DSL")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopflambda",
                                     description="Enhancement of the Milnor number of R^4 -> R^2 maps.",
                                     epilog=GRAMMAR_HELP,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("enhance", help="compute lambda, rho and mu with cross-checks",
                        epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _map_args(sp)
    sp.add_argument("--method", choices=METHODS, default="linking")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10_000_000, help="Whitehead point pairs")
    sp.add_argument("--step", type=float, default=0.02, help="curve tracing step")
    sp.add_argument("--cutoff", type=float, default=1e-2, help="Whitehead near-pair cutoff")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--check-radius", type=float, action="append",
                    help="also recompute at this radius (repeatable)")
    sp.add_argument("--no-mirror", action="store_true", help="skip the mirror cross-check")
    sp.add_argument("--export-curves", metavar="PATH",
                    help="write traced preimage curves to PATH_plus.csv and PATH_minus.csv")
    sp.add_argument("--timings", action="store_true", help="record wall-clock timings")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_enhance)

    sp = sub.add_parser("braid", help="closed-form lambda of a braid-axis link")
    sp.add_argument("word", help='e.g. "B3: s1 s2^-1"')
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_braid)

    sp = sub.add_parser("plumb", help="lambda and mu of a tree of plumbed Hopf bands")
    sp.add_argument("tree", help="JSON text or path to a JSON file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_plumb)

    sp = sub.add_parser("trace", help="export preimage curves of one Gauss triple")
    _map_args(sp, positional=False)
    sp.add_argument("--which", choices=("plus", "minus"), default="minus")
    sp.add_argument("--q", default="0,0,1", help="unit vector a,b,c in S^2")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--step", type=float, default=0.02)
    sp.add_argument("--out", default="curves.csv")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("check", help="run the algebraic identity suite")
    sp.add_argument("--n-random", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--points", type=int, default=1000)
    sp.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; 2 is reserved for failed checks here
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (HopfLambdaError, UsageError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
