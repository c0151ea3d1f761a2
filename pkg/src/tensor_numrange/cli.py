"""Command-line entry point.

Exit codes: 0 success, 1 a ``check`` property failed, 2 usage or parse error,
3 numerical failure (the failing stage is printed).
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .battery import BatteryConfig, run_battery
from .errors import NumericalError, TensorError
from .generators import KINDS, generate
from .numrange import boundary, contains_point, numerical_radius
from .pinv import moore_penrose, penrose_residuals
from .spectral import eigenvalues, sort_values

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_boundary(args, out):
    A = io.read_tensor(args.inp)
    b = boundary(A, args.n)
    _write(args.csv, io.boundary_csv(b))
    eigs = sort_values(eigenvalues(A).values) if args.eigs else []
    if args.svg:
        _write(args.svg, io.boundary_svg(b.points, eigs))
    if not b.is_certified():
        print(f"warning: convexity violation {b.convexity_violation():.3e}", file=sys.stderr)
    for lam in eigs:
        ok = contains_point(A, lam, args.n, tol=1e-6)
        print(f"{lam.real:.12g} {lam.imag:.12g} {'in' if ok else 'OUT'}", file=out)
    return EXIT_OK


def cmd_radius(args, out):
    print(f"{numerical_radius(io.read_tensor(args.inp), args.n):.6f}", file=out)
    return EXIT_OK


def cmd_spectrum(args, out):
    for lam in sort_values(eigenvalues(io.read_tensor(args.inp)).values):
        print(f"{lam.real:.12g} {lam.imag:.12g}", file=out)
    return EXIT_OK


def cmd_pinv(args, out):
    A = io.read_tensor(args.inp)
    X = moore_penrose(A)
    io.write_tensor(args.out, X)
    if args.residuals:
        r = penrose_residuals(A, X)
        for k, v in enumerate((r.r1, r.r2, r.r3, r.r4), start=1):
            print(f"r{k} {v:.3e}", file=out)
    return EXIT_OK


def cmd_check(args, out):
    A = io.read_tensor(args.inp)
    cfg = BatteryConfig(seed=args.seed, instances=args.instances, n_theta=args.n)
    results = run_battery(cfg, A, emit=lambda line: print(line, file=out))
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} properties passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def cmd_gen(args, out):
    io.write_tensor(args.out, generate(args.kind, args.shape, args.seed))
    return EXIT_OK


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensor-nr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("boundary", help="sample the boundary of W(A)")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--n", type=_positive, default=500)
    p.add_argument("--csv", required=True)
    p.add_argument("--svg")
    p.add_argument("--eigs", action="store_true", help="overlay and check eigenvalues")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("radius", help="numerical radius w(A)")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--n", type=_positive, default=2000)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("spectrum", help="eigenvalues, one 're im' pair per line")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("pinv", help="Moore-Penrose inverse")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--residuals", action="store_true")
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("check", help="run the invariant battery")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--n", type=_positive, default=360)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a reproducible random tensor")
    p.add_argument("--kind", choices=sorted(KINDS), required=True)
    p.add_argument("--shape", type=_positive, nargs="+", required=True, help="row-block extents")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except NumericalError as exc:
        print(f"error: numerical failure in stage '{exc.stage or args.command}': {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (TensorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
