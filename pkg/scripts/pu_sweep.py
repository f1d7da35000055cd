"""Error metrics, run time and workload versus rows per PU, for several sizes.

    python scripts/pu_sweep.py --sizes 64,128,256 --sweeps 10
"""

import argparse
from pathlib import Path

from dsbjacobi.bench import ExperimentSpec, resource_model, run_pu_sweep, write_results
from dsbjacobi.cli import parse_int_list, parse_sizes


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=parse_sizes, default=[(64, 64), (128, 128), (256, 256)])
    ap.add_argument("--rows-per-pu", type=parse_int_list, default=[2, 4, 8, 16, 32])
    ap.add_argument("--sweeps", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--repetitions", type=int, default=3)
    ap.add_argument("--out", default="results/rows_per_pu.csv")
    args = ap.parse_args()

    spec = ExperimentSpec(
        sizes=args.sizes,
        rows_per_pu_list=args.rows_per_pu,
        sweeps_list=[args.sweeps],
        seed=args.seed,
        repetitions=args.repetitions,
    )
    rows = run_pu_sweep(spec)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_results(rows, args.out, spec)

    print(f"{'m':>5} {'n':>5} {'p':>3} {'time_ms':>9} {'err_svd':>9} {'err_uq':>9} "
          f"{'err_vq':>9} {'rot/sweep':>9} {'RAMs':>5}")
    for r in rows:
        rm = resource_model(r["m"], r["n"], r["rows_per_pu"])
        print(f"{r['m']:>5} {r['n']:>5} {r['rows_per_pu']:>3} {r['time_ms']:9.1f} "
              f"{r['norm_error_svd']:9.2e} {r['norm_error_uq_gram']:9.2e} "
              f"{r['norm_error_vq']:9.2e} {rm.rotations_per_sweep:>9} {rm.total_ram_blocks:>5}")


if __name__ == "__main__":
    main()
