"""Command-line interface.

Subcommands: ``decompose``, ``verify``, ``bench`` and ``schedule``.

Exit codes:
    0  success
    2  usage error (bad flags or invalid configuration)
    3  I/O error (unreadable or malformed file)
    4  validation error (non-finite data, inconsistent shapes)
    5  an ``--assert-*`` threshold was exceeded
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import ExperimentError, ExperimentSpec, run_iteration_sweep, run_pu_sweep, write_results
from .errors import ConfigError, DimensionError, MatrixParseError, ValidationError
from .matrix import read_matrix, write_matrix
from .metrics import error_report
from .schedule import build_schedule
from .solver import SolverConfig, dsb_svd

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VALIDATION, EXIT_ASSERT = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def parse_int_list(text):
    """``"1..6"`` -> [1..6], ``"2,4,8"`` -> [2, 4, 8]; ranges and commas may be mixed."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list: {text!r}")
    return out


def parse_sizes(text):
    """``"64,128x32"`` -> [(64, 64), (128, 32)]."""
    sizes = []
    for part in text.split(","):
        part = part.strip().lower()
        if not part:
            continue
        if "x" in part:
            m, n = part.split("x")
            sizes.append((int(m), int(n)))
        else:
            sizes.append((int(part), int(part)))
    if not sizes:
        raise argparse.ArgumentTypeError(f"empty size list: {text!r}")
    return sizes


def _solver_flags(p):
    p.add_argument("--sweeps", type=int, default=10)
    p.add_argument("--rows-per-pu", type=int, default=2)
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--skip-tol", type=float, default=0.0)
    p.add_argument("--no-sort", action="store_true", help="keep sigma in row order")
    p.add_argument("--dtype", choices=["float64", "float32"], default="float64")


def build_parser():
    parser = argparse.ArgumentParser(prog="dsbjacobi", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="compute U, S, V of a matrix file")
    p.add_argument("--input", required=True)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--format", choices=["csv", "bin"], default=None,
                   help="format of the input and outputs (default: from the input suffix)")
    p.add_argument("--full-sigma", action="store_true", help="write S as a dense diagonal matrix")
    _solver_flags(p)

    p = sub.add_parser("verify", help="error metrics of given factors")
    p.add_argument("--input", required=True, help="original matrix A")
    p.add_argument("--u", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--format", choices=["csv", "bin"], default=None)
    p.add_argument("--output", help="also write the JSON report here")
    p.add_argument("--assert-svd", type=float)
    p.add_argument("--assert-uq", type=float,
                   help="bound on U U^T - I for square U, U^T U - I otherwise")
    p.add_argument("--assert-vq", type=float)

    p = sub.add_parser("bench", help="run an experiment sweep and write CSV + JSON")
    p.add_argument("--mode", choices=["iterations", "rows-per-pu"], default="iterations")
    p.add_argument("--sizes", type=parse_sizes, default=[(64, 64)])
    p.add_argument("--sweeps", type=parse_int_list, default=list(range(1, 13)))
    p.add_argument("--rows-per-pu", type=parse_int_list, default=[2])
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--distribution", choices=["standard_normal", "uniform01"],
                   default="standard_normal")
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--out", default="bench.csv")

    p = sub.add_parser("schedule", help="print the stage plan of one sweep")
    p.add_argument("n_rows", type=int)
    p.add_argument("rows_per_pu", type=int)
    p.add_argument("--out", help="write the dump to a file instead of stdout")
    return parser


def _read_sigma(path, fmt):
    s = read_matrix(path, fmt)
    if s.shape[0] == s.shape[1] and s.shape[0] > 1:
        return np.diag(s).copy()
    return s.ravel()


def cmd_decompose(args):
    a = read_matrix(args.input, args.format)
    cfg = SolverConfig(
        sweeps=args.sweeps, rows_per_pu=args.rows_per_pu, skip_tol=args.skip_tol,
        sort_output=not args.no_sort, workers=args.workers, dtype=args.dtype,
    )
    res = dsb_svd(a, cfg)
    ext = args.format or ("bin" if Path(args.input).suffix.lower() == ".bin" else "csv")
    prefix = args.out_prefix
    write_matrix(res.u, f"{prefix}_U.{ext}", ext)
    write_matrix(res.s if args.full_sigma else res.sigma[:, None], f"{prefix}_S.{ext}", ext)
    write_matrix(res.v, f"{prefix}_V.{ext}", ext)

    # metrics of the factors exactly as written, so verify reproduces them
    u = read_matrix(f"{prefix}_U.{ext}", ext)
    sigma = _read_sigma(f"{prefix}_S.{ext}", ext)
    v = read_matrix(f"{prefix}_V.{ext}", ext)
    report = error_report(a, u, sigma, v).to_dict()
    report.update(
        sweeps_run=res.sweeps_run,
        rotations_applied=res.rotations_applied,
        rotations_skipped=res.rotations_skipped,
    )
    Path(f"{prefix}_metrics.json").write_text(json.dumps(report, indent=2) + "\n")
    print(json.dumps(report))
    return EXIT_OK


def cmd_verify(args):
    a = read_matrix(args.input, args.format)
    u = read_matrix(args.u, args.format)
    sigma = _read_sigma(args.s, args.format)
    v = read_matrix(args.v, args.format)
    report = error_report(a, u, sigma, v)
    text = json.dumps(report.to_dict())
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n")

    uq = report.norm_error_uq if u.shape[0] == u.shape[1] else report.norm_error_uq_gram
    failed = [
        name for name, value, bound in (
            ("svd", report.norm_error_svd, args.assert_svd),
            ("uq", uq, args.assert_uq),
            ("vq", report.norm_error_vq, args.assert_vq),
        )
        if bound is not None and not value <= bound
    ]
    if failed:
        print(f"assertion failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def cmd_bench(args):
    try:
        spec = ExperimentSpec(
            sizes=args.sizes, rows_per_pu_list=args.rows_per_pu, sweeps_list=args.sweeps,
            seed=args.seed, repetitions=args.repetitions, distribution=args.distribution,
            workers=args.workers,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    run = run_iteration_sweep if args.mode == "iterations" else run_pu_sweep
    rows = run(spec)
    csv_path, meta_path = write_results(rows, args.out, spec)
    print(f"wrote {len(rows)} rows to {csv_path} (metadata {meta_path})")
    return EXIT_OK


def cmd_schedule(args):
    sched = build_schedule(args.n_rows, args.rows_per_pu)
    text = sched.dump()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    distinct = {frozenset(p) for p in sched.all_pairs()}
    print(
        f"{len(sched.stages)} stages, {sched.config.num_pus} PUs per stage, "
        f"{len(distinct)} distinct pairs",
        file=sys.stderr,
    )
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "schedule": cmd_schedule,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UsageError) as exc:
        parser.print_usage(sys.stderr)
        print(f"dsbjacobi {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixParseError, OSError) as exc:
        print(f"dsbjacobi: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, DimensionError, ExperimentError) as exc:
        print(f"dsbjacobi: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
