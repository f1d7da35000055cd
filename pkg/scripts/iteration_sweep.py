"""Error metrics and run time versus sweep count on a square random matrix.

    python scripts/iteration_sweep.py --size 256 --out results/iterations.csv
"""

import argparse
from pathlib import Path

from dsbjacobi.bench import ExperimentSpec, linear_fit_r2, run_iteration_sweep, write_results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--max-sweeps", type=int, default=12)
    ap.add_argument("--rows-per-pu", type=int, default=2)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--repetitions", type=int, default=3)
    ap.add_argument("--out", default="results/iterations.csv")
    args = ap.parse_args()

    spec = ExperimentSpec(
        sizes=[(args.size, args.size)],
        rows_per_pu_list=[args.rows_per_pu],
        sweeps_list=list(range(1, args.max_sweeps + 1)),
        seed=args.seed,
        repetitions=args.repetitions,
    )
    rows = run_iteration_sweep(spec)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_results(rows, args.out, spec)

    print(f"{'sweeps':>6} {'time_ms':>9} {'err_svd':>9} {'err_uq':>9} {'err_vq':>9}")
    for r in rows:
        print(f"{r['sweeps']:>6} {r['time_ms']:9.1f} {r['norm_error_svd']:9.2e} "
              f"{r['norm_error_uq_gram']:9.2e} {r['norm_error_vq']:9.2e}")
    r2 = linear_fit_r2([r["sweeps"] for r in rows], [r["time_ms"] for r in rows])
    print(f"linear fit of time vs sweeps: R^2 = {r2:.4f}")


if __name__ == "__main__":
    main()
