"""Row-pair one-sided Jacobi SVD driven by the PU stage schedule.

The solver works on ``W = A^T`` (n x m) so every rotation touches two
contiguous rows.  Rotating rows i and j of W right-multiplies ``A`` by a plane
rotation, and the same rotation applied to the rows of an identity
accumulator builds ``V^T``.  After the last sweep the row norms of W are the
singular values and the normalized rows are the left singular vectors.

``hestenes_svd`` is the plain sequential method (all pairs in lexicographic
order, one at a time) and serves as the reference for ``dsb_svd``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .matrix import as_matrix
from .rotation import apply_rotation, compute_params, rotate_pairs
from .schedule import PuConfig, build_schedule, padded_size

_DTYPES = {"float64": np.float64, "float32": np.float32}


@dataclass(frozen=True)
class SolverConfig:
    sweeps: int = 10
    rows_per_pu: int = 2
    skip_tol: float = 0.0
    sigma_zero_tol: float = 1e-300
    sort_output: bool = True
    workers: int = 0
    dtype: str = "float64"
    # stop once max |gamma|/sqrt(alpha*beta) over a sweep drops below this
    early_stop_tol: float | None = None

    def __post_init__(self):
        if self.sweeps < 1:
            raise ConfigError("sweeps must be >= 1")
        PuConfig(self.rows_per_pu, self.rows_per_pu)
        if self.skip_tol < 0:
            raise ConfigError("skip_tol must be >= 0")
        if self.sigma_zero_tol < 0:
            raise ConfigError("sigma_zero_tol must be >= 0")
        if self.workers < 0:
            raise ConfigError("workers must be >= 0")
        if self.dtype not in _DTYPES:
            raise ConfigError(f"dtype must be one of {sorted(_DTYPES)}")


@dataclass
class SvdResult:
    """Thin SVD ``A = u @ diag(sigma) @ v.T`` with run counters."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    sweeps_run: int = 0
    rotations_applied: int = 0
    rotations_skipped: int = 0

    @property
    def s(self):
        return np.diag(self.sigma)

    def reconstruct(self):
        return (self.u * self.sigma) @ self.v.T


def normalize_and_assemble(working_u, v_acc, cfg=SolverConfig()):
    """Turn post-sweep rows of ``B^T`` and the ``V^T`` accumulator into an SvdResult.

    Rows with norm at or below ``cfg.sigma_zero_tol`` get sigma 0 and a zero
    column in U instead of being divided.
    """
    sigma = np.linalg.norm(working_u, axis=1)
    live = sigma > cfg.sigma_zero_tol
    u_rows = np.zeros_like(working_u)
    u_rows[live] = working_u[live] / sigma[live, None]
    sigma = np.where(live, sigma, 0.0).astype(working_u.dtype)

    u = np.ascontiguousarray(u_rows.T)
    v = np.ascontiguousarray(v_acc.T)
    if cfg.sort_output:
        order = np.argsort(-sigma, kind="stable")
        u = np.ascontiguousarray(u[:, order])
        sigma = sigma[order]
        v = np.ascontiguousarray(v[:, order])
    return SvdResult(u, sigma, v)


def _swap(res):
    return replace(res, u=res.v, v=res.u)


def _run_stage(work, acc, rows, local_pairs, skip_tol):
    applied = skipped = 0
    worst = 0.0
    for li, lj in local_pairs:
        a, s, g = rotate_pairs(work, acc, rows[:, li], rows[:, lj], skip_tol)
        applied += a
        skipped += s
        worst = max(worst, g)
    return applied, skipped, worst


def dsb_svd(a, cfg=SolverConfig()):
    """SVD of ``a`` with the staged row-pair Jacobi method.

    Parameters
    ----------
    a : array_like, shape (m, n)
        Finite real matrix.  Wide inputs (m < n) are handled by decomposing
        the transpose and swapping the factors.
    cfg : SolverConfig

    Returns
    -------
    SvdResult
        ``u`` is m x k, ``sigma`` has k entries and ``v`` is n x k with
        ``k = min(m, n)``.

    Results are bit-identical for any ``cfg.workers``: PUs in a stage own
    disjoint rows and each PU walks its pairs in a fixed order.
    """
    dtype = _DTYPES[cfg.dtype]
    a = as_matrix(a, dtype=dtype)
    if a.shape[0] < a.shape[1]:
        return _swap(dsb_svd(a.T, cfg))

    n = a.shape[1]
    n_pad = padded_size(n, cfg.rows_per_pu)
    work = np.zeros((n_pad, a.shape[0]), dtype=dtype)
    work[:n] = a.T
    acc = np.eye(n_pad, dtype=dtype)

    sched = build_schedule(n_pad, cfg.rows_per_pu)
    table = sched.row_table
    local_pairs = sched.local_pairs
    chunks = [
        c for c in np.array_split(np.arange(sched.config.num_pus), max(cfg.workers, 1)) if len(c)
    ]
    pool = ThreadPoolExecutor(max_workers=cfg.workers) if cfg.workers > 0 else None

    applied = skipped = sweeps_run = 0
    try:
        for _ in range(cfg.sweeps):
            worst = 0.0
            for rows in table:
                if pool is None:
                    results = [_run_stage(work, acc, rows, local_pairs, cfg.skip_tol)]
                else:
                    futures = [
                        pool.submit(_run_stage, work, acc, rows[c], local_pairs, cfg.skip_tol)
                        for c in chunks
                    ]
                    results = [f.result() for f in futures]
                for ap, sk, g in results:
                    applied += ap
                    skipped += sk
                    worst = max(worst, g)
            sweeps_run += 1
            if cfg.early_stop_tol is not None and worst < cfg.early_stop_tol:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    res = normalize_and_assemble(work[:n], acc[:n, :n], cfg)
    return replace(
        res, sweeps_run=sweeps_run, rotations_applied=applied, rotations_skipped=skipped
    )


def hestenes_svd(a, sweeps=10, skip_tol=0.0, sort_output=True):
    """Classic cyclic one-sided Jacobi: pairs (i, j), i < j, lexicographic, one at a time."""
    if sweeps < 1:
        raise ConfigError("sweeps must be >= 1")
    a = as_matrix(a)
    if a.shape[0] < a.shape[1]:
        return _swap(hestenes_svd(a.T, sweeps, skip_tol, sort_output))

    n = a.shape[1]
    work = np.ascontiguousarray(a.T)
    acc = np.eye(n)
    applied = skipped = 0
    for _ in range(sweeps):
        for i in range(n - 1):
            for j in range(i + 1, n):
                p = compute_params(work[i], work[j], skip_tol)
                if p.skipped:
                    skipped += 1
                    continue
                work[i], work[j] = apply_rotation(work[i], work[j], p)
                acc[i], acc[j] = apply_rotation(acc[i], acc[j], p)
                applied += 1

    res = normalize_and_assemble(work, acc, SolverConfig(sort_output=sort_output))
    return replace(res, sweeps_run=sweeps, rotations_applied=applied, rotations_skipped=skipped)
