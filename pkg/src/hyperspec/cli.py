"""Command-line entry point: ``hyperspec <command> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import verify as V
from .certificates import CERTIFICATE_TAGS
from .errors import BudgetError, HyperspecError
from .families import generate, parse_spec
from .hypergraph import format_hg, read_hg
from .moves import apply_script, parse_script
from .multigraph import Multigraph, format_mg, read_mg
from .tensor import spectral_radius

EXIT_OK, EXIT_CLAIM, EXIT_INPUT = 0, 1, 2


def _range(text: str) -> list[int]:
    match = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _write(path, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_radius(args) -> int:
    H = read_hg(args.file)
    est = spectral_radius(H, tol=args.tol, max_iter=args.max_iter)
    print(f"rho        {est.rho!r}")
    print(f"bounds     [{est.lower_bound!r}, {est.upper_bound!r}]")
    print(f"iterations {est.iterations}")
    print(f"residual   {est.residual:.3e}")
    return EXIT_OK


def cmd_family(args) -> int:
    spec = parse_spec(args.spec)
    obj = generate(spec)
    text = format_mg(obj) if isinstance(obj, Multigraph) else format_hg(obj)
    _write(args.output or "-", text)
    return EXIT_OK


def _print_report(rep: V.OrderingReport, top: int, out) -> None:
    scope = "" if rep.in_scope else "  (below the ordering threshold: report only)"
    print(f"== {rep.kind} k={rep.k} m={rep.m}: {len(rep.ranked)} pool members{scope}", file=out)
    for i, e in enumerate(rep.ranked[:top], start=1):
        print(f"  {i:>3}  {e.rho:.12f}  {e.method:<11}  {e.spec}", file=out)
    for c in rep.claims:
        gap = "" if c.gap is None else f" gap={c.gap:+.3e}"
        pair = f" [{c.left} vs {c.right}]" if c.left else ""
        print(f"  {c.id:<8} {c.status}{gap}{pair}  {c.detail}", file=out)


def cmd_verify(args) -> int:
    run = V.verify_unicyclic if args.kind == "unicyclic" else V.verify_bicyclic
    reports = [run(k, m, tol=args.tol, workers=args.workers) for k in args.k for m in args.m]
    # keep stdout clean when a machine-readable report goes there
    out = sys.stderr if "-" in (args.json, args.csv) else sys.stdout
    print(V.SCOPE_BANNER, file=out)
    for rep in reports:
        _print_report(rep, args.top, out)
    if args.json:
        _write(args.json, V.reports_to_json(reports))
    if args.csv:
        _write(args.csv, V.reports_to_csv(reports))
    failed = [r for r in reports if not r.ok]
    if failed:
        print(f"{len(failed)} report(s) with violated claims", file=sys.stderr)
        return EXIT_CLAIM
    return EXIT_OK


def cmd_certify(args) -> int:
    ok, doc = V.certify(args.tag, args.m, args.k, a=args.a)
    info = json.loads(doc)
    print(f"{args.tag} on {info['hypergraph']}: {info['verdict']}, consistent={info['consistent']}")
    if "bound" in info:
        op = "=" if info["bound"]["kind"] == "exact" else "<"
        print(f"bound: rho {op} {info['bound']['value']!r}; solver rho = {info['solver_rho']!r}")
    for p in info["problems"]:
        print(f"problem: {p}", file=sys.stderr)
    if args.json:
        _write(args.json, doc + "\n")
    return EXIT_OK if ok else EXIT_CLAIM


def cmd_power_check(args) -> int:
    G = read_mg(args.file)
    row = V.power_check(G, args.k)
    print(f"k={row.k} closed-form={row.closed_form!r} tensor={row.tensor!r} diff={row.difference:.3e}")
    return EXIT_OK if row.ok else EXIT_CLAIM


def cmd_oracle_enum(args) -> int:
    rows = V.oracle_enum(args.k, args.m)
    print(f"{'m':>3} {'r':>3} {'count':>6} {'classified':>10}  cycles (count: instances)")
    bad = 0
    for row in rows:
        hist = ", ".join(f"{c}: {n}" for c, n in sorted(row.cycle_counts.items()))
        print(f"{row.m:>3} {row.r:>3} {row.instances:>6} {row.classified:>10}  {hist}")
        for ce in row.counterexamples:
            print(f"  counterexample {ce}", file=sys.stderr)
        bad += len(row.counterexamples)
    print(f"{sum(r.instances for r in rows)} instances, {bad} counterexamples")
    return EXIT_CLAIM if bad else EXIT_OK


def cmd_move(args) -> int:
    H = read_hg(args.file)
    ops = parse_script(Path(args.script).read_text())
    H2 = apply_script(H, ops)
    if args.radius:
        r0 = spectral_radius(H).rho
        r1 = spectral_radius(H2).rho
        print(f"# rho before {r0!r} after {r1!r} change {r1 - r0:+.3e}", file=sys.stderr)
    _write(args.output or "-", format_hg(H2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperspec", description="Spectral radii of uniform hypergraphs and their extremal orderings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("radius", help="spectral radius of a .hg file")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--max-iter", type=int, default=10**6)
    s.set_defaults(func=cmd_radius)

    s = sub.add_parser("family", help="write a named family instance (.hg, or .mg for multigraph tags)")
    s.add_argument("spec", help="e.g. U2:k=3,a=6,b=0 or Gab:m=8,a=4,b=2")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("verify", help="check the extremal ordering over a (k, m) grid")
    s.add_argument("kind", choices=["unicyclic", "bicyclic"])
    s.add_argument("--k", type=int, nargs="+", default=None)
    s.add_argument("--m", type=_range, default=None, help="N or A..B")
    s.add_argument("--tol", type=float, default=V.ORDER_TOL)
    s.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    s.add_argument("--csv", help="write the ranked CSV here ('-' for stdout)")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--top", type=int, default=8, help="ranked rows to print per report")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("certify", help="build and check a normality certificate")
    s.add_argument("tag", choices=CERTIFICATE_TAGS)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--a", type=int, default=0, help="pendent edges at u (U31-subnormal only)")
    s.add_argument("--json")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("power-check", help="compare rho(G)^(2/k) with the solver on G^k")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_power_check)

    s = sub.add_parser("oracle-enum", help="exhaustive structural checks on small k-graphs")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--m", type=int, default=4)
    s.set_defaults(func=cmd_oracle_enum)

    s = sub.add_parser("move", help="apply a move script to a .hg file")
    s.add_argument("file")
    s.add_argument("script")
    s.add_argument("-o", "--output")
    s.add_argument("--radius", action="store_true", help="report the radius before and after")
    s.set_defaults(func=cmd_move)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        if args.k is None:
            args.k = [3, 4]
        if args.m is None:
            args.m = list(range(8, 15)) if args.kind == "unicyclic" else list(range(5, 13))
    try:
        return args.func(args)
    except (HyperspecError, OSError) as exc:
        kind = "budget exceeded" if isinstance(exc, BudgetError) else "error"
        print(f"hyperspec: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
