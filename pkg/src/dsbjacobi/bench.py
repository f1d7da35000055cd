"""Desk-scale experiment sweeps over iteration count and PU size.

Test matrices come from numpy's ``Generator(PCG64(seed))``; ``standard_normal``
uses the generator's ziggurat sampler and ``uniform01`` its ``random()``
stream, both of which are platform independent for a given numpy release.

Timings are software wall-clock times (``time.perf_counter``), the median of
``repetitions`` runs after one untimed warm-up run.  The iteration sweep takes
its repetitions in interleaved rounds over all sweep counts.  Timings say
nothing about FPGA latency; every row carries ``platform=software``.
"""

import csv
import json
import platform as _platform
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .metrics import error_report
from .schedule import PuConfig, padded_size, rotations_per_sweep
from .solver import SolverConfig, dsb_svd

DISTRIBUTIONS = ("standard_normal", "uniform01")

CSV_COLUMNS = (
    "experiment_id", "m", "n", "rows_per_pu", "sweeps", "seed", "distribution",
    "time_ms", "norm_error_svd", "norm_error_uq_literal", "norm_error_uq_gram",
    "norm_error_vq", "rotations_applied", "rotations_skipped", "stages_per_sweep",
    "total_ram_blocks", "platform",
)


class ExperimentError(RuntimeError):
    def __init__(self, cell, cause):
        self.cell = cell
        super().__init__(f"experiment cell {cell} failed: {cause}")


def generate_matrix(m, n, seed, distribution="standard_normal"):
    if m < 1 or n < 1:
        raise ValueError(f"matrix dimensions must be positive, got {m}x{n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    if distribution == "standard_normal":
        return rng.standard_normal((m, n))
    if distribution == "uniform01":
        return rng.random((m, n))
    raise ValueError(f"unknown distribution {distribution!r}")


@dataclass(frozen=True)
class ResourceModel:
    """Block-RAM bookkeeping for a PU array: two U rows and two V rows per PU."""

    num_pus: int
    rams_per_pu: int
    total_ram_blocks: int
    words_per_u_ram: int
    words_per_v_ram: int
    rotations_per_sweep: int
    stages_per_sweep: int


def resource_model(m, n, rows_per_pu):
    if m < n:
        m, n = n, m
    n_pad = padded_size(n, rows_per_pu)
    cfg = PuConfig(n_pad, rows_per_pu)
    return ResourceModel(
        num_pus=cfg.num_pus,
        rams_per_pu=4,
        total_ram_blocks=4 * cfg.num_pus,
        words_per_u_ram=m,
        words_per_v_ram=n,
        rotations_per_sweep=rotations_per_sweep(n_pad, rows_per_pu),
        stages_per_sweep=cfg.stages_per_sweep,
    )


@dataclass
class ExperimentSpec:
    sizes: list = field(default_factory=lambda: [(64, 64)])
    rows_per_pu_list: list = field(default_factory=lambda: [2])
    sweeps_list: list = field(default_factory=lambda: list(range(1, 13)))
    seed: int = 42
    repetitions: int = 3
    distribution: str = "standard_normal"
    workers: int = 0

    def __post_init__(self):
        self.sizes = [tuple(s) for s in self.sizes]
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}")
        for m, n in self.sizes:
            if m < 1 or n < 1:
                raise ValueError(f"invalid size {m}x{n}")
        for s in self.sweeps_list:
            if s < 1:
                raise ValueError("sweeps must be >= 1")
        for p in self.rows_per_pu_list:
            PuConfig(p, p)


def time_call(fn, repetitions):
    """Median wall time in ms of ``repetitions`` calls after one warm-up; returns (ms, last result)."""
    result = fn()
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = fn()
        times.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(times), result


def time_interleaved(fns, repetitions, seed=0):
    """Median wall time in ms per callable, sampled in interleaved rounds.

    Every callable gets one warm-up call, then each round calls all of them
    once in a shuffled order.  Interleaving spreads slow spells of the host
    across cells instead of letting one cell absorb them.
    """
    results = [fn() for fn in fns]
    samples = [[] for _ in fns]
    rng = np.random.default_rng(seed)
    for _ in range(repetitions):
        for k in rng.permutation(len(fns)):
            t0 = time.perf_counter()
            results[k] = fns[k]()
            samples[k].append((time.perf_counter() - t0) * 1e3)
    return [statistics.median(t) for t in samples], results


def run_cell(a, experiment_id, spec, rows_per_pu, sweeps, timed=None):
    """One CSV row; ``timed`` is an already measured ``(ms, SvdResult)``."""
    m, n = a.shape
    cell = dict(m=m, n=n, rows_per_pu=rows_per_pu, sweeps=sweeps)
    try:
        if timed is None:
            cfg = SolverConfig(sweeps=sweeps, rows_per_pu=rows_per_pu, workers=spec.workers)
            timed = time_call(lambda: dsb_svd(a, cfg), spec.repetitions)
        ms, res = timed
        report = error_report(a, res.u, res.sigma, res.v)
        model = resource_model(m, n, rows_per_pu)
    except Exception as exc:
        raise ExperimentError(cell, exc) from exc
    return {
        "experiment_id": experiment_id,
        "m": m,
        "n": n,
        "rows_per_pu": rows_per_pu,
        "sweeps": sweeps,
        "seed": spec.seed,
        "distribution": spec.distribution,
        "time_ms": ms,
        "norm_error_svd": report.norm_error_svd,
        "norm_error_uq_literal": report.norm_error_uq,
        "norm_error_uq_gram": report.norm_error_uq_gram,
        "norm_error_vq": report.norm_error_vq,
        "rotations_applied": res.rotations_applied,
        "rotations_skipped": res.rotations_skipped,
        "stages_per_sweep": model.stages_per_sweep,
        "total_ram_blocks": model.total_ram_blocks,
        "platform": "software",
    }


def run_iteration_sweep(spec):
    """Time and error metrics versus sweep count, one row per (size, rows_per_pu, sweeps)."""
    rows = []
    for m, n in spec.sizes:
        a = generate_matrix(m, n, spec.seed, spec.distribution)
        for p in spec.rows_per_pu_list:
            fns = [_solve(a, s, p, spec.workers) for s in spec.sweeps_list]
            try:
                times, results = time_interleaved(fns, spec.repetitions, seed=spec.seed)
            except Exception as exc:
                raise ExperimentError(dict(m=m, n=n, rows_per_pu=p), exc) from exc
            for s, ms, res in zip(spec.sweeps_list, times, results):
                rows.append(run_cell(a, "iterations", spec, p, s, timed=(ms, res)))
    return rows


def _solve(a, sweeps, rows_per_pu, workers):
    cfg = SolverConfig(sweeps=sweeps, rows_per_pu=rows_per_pu, workers=workers)
    return lambda: dsb_svd(a, cfg)


def run_pu_sweep(spec):
    """Time and error metrics versus rows per PU, one row per (size, sweeps, rows_per_pu)."""
    rows = []
    for m, n in spec.sizes:
        a = generate_matrix(m, n, spec.seed, spec.distribution)
        for s in spec.sweeps_list:
            for p in spec.rows_per_pu_list:
                rows.append(run_cell(a, "rows_per_pu", spec, p, s))
    return rows


def linear_fit_r2(x, y):
    """Coefficient of determination of the least-squares line through (x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    return 1.0 - float(np.sum(resid**2) / total) if total > 0 else 1.0


def _fmt(v):
    return repr(v) if isinstance(v, float) else str(v)


def write_results(rows, path, spec):
    """Write the CSV table and a ``.json`` metadata sidecar next to it."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    meta = {
        "spec": asdict(spec),
        "library": "dsbjacobi",
        "version": __version__,
        "numpy": np.__version__,
        "python": _platform.python_version(),
        "prng": "numpy.random.Generator(PCG64(seed))",
        "platform": "software",
        "timing": "median of repetitions, perf_counter, warm-up excluded",
    }
    sidecar = path.with_suffix(".json")
    sidecar.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    return path, sidecar
