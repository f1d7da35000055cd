"""One-sided Jacobi plane rotations on row pairs.

For a pair of rows ``u_i, u_j`` with ``alpha = u_i.u_i``, ``beta = u_j.u_j``
and ``gamma = u_i.u_j`` the rotation

    u_i' = c*u_i - s*u_j
    u_j' = s*u_i + c*u_j

makes the pair orthogonal when ``zeta = (beta - alpha) / (2*gamma)`` and
``t = sign(zeta) / (|zeta| + sqrt(1 + zeta**2))`` (the smaller root, so
``|t| <= 1``), ``c = 1/sqrt(1 + t**2)``, ``s = c*t``.  ``sign(0)`` is +1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True)
class RotationParams:
    alpha: float
    beta: float
    gamma: float
    cos_theta: float
    sin_theta: float
    skipped: bool = False


def _cos_sin(alpha, beta, gamma):
    zeta = (beta - alpha) / (2.0 * gamma)
    sign = 1.0 if zeta >= 0.0 else -1.0
    t = sign / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, c * t


def compute_params(row_i, row_j, skip_tol=0.0):
    """Rotation parameters that orthogonalize ``row_i`` and ``row_j``.

    The pair is skipped (``c, s = 1, 0``) when ``gamma == 0`` or
    ``|gamma| <= skip_tol * sqrt(alpha * beta)``.
    """
    row_i = np.asarray(row_i, dtype=np.float64)
    row_j = np.asarray(row_j, dtype=np.float64)
    if row_i.ndim != 1 or row_i.shape != row_j.shape:
        raise DimensionError(f"row shapes differ: {row_i.shape} vs {row_j.shape}")
    if row_i.size == 0:
        raise DimensionError("rows must have at least one element")
    if skip_tol < 0:
        raise ValueError("skip_tol must be non-negative")
    alpha = float(row_i @ row_i)
    beta = float(row_j @ row_j)
    gamma = float(row_i @ row_j)
    if gamma == 0.0 or abs(gamma) <= skip_tol * math.sqrt(alpha * beta):
        return RotationParams(alpha, beta, gamma, 1.0, 0.0, True)
    c, s = _cos_sin(alpha, beta, gamma)
    return RotationParams(alpha, beta, gamma, c, s, False)


def apply_rotation(row_i, row_j, p):
    """Return the rotated pair ``(c*row_i - s*row_j, s*row_i + c*row_j)``."""
    row_i = np.asarray(row_i)
    row_j = np.asarray(row_j)
    if row_i.shape != row_j.shape:
        raise DimensionError(f"row shapes differ: {row_i.shape} vs {row_j.shape}")
    c, s = p.cos_theta, p.sin_theta
    return c * row_i - s * row_j, s * row_i + c * row_j


def rotate_pairs(work, acc, idx_i, idx_j, skip_tol=0.0):
    """Orthogonalize rows ``idx_i[k]`` and ``idx_j[k]`` of ``work`` for every k at once.

    All indices must be distinct.  The same rotations are applied to the rows
    of ``acc`` (the transposed right-factor accumulator).  Each pair only
    reads and writes its own rows, and every reduction is taken per row, so
    the outcome for a pair does not depend on which other pairs share the
    call.

    Returns ``(applied, skipped, max_rel_gamma)`` where ``max_rel_gamma`` is
    the largest ``|gamma| / sqrt(alpha*beta)`` seen before rotating.
    """
    wi = work[idx_i]
    wj = work[idx_j]
    alpha = (wi * wi).sum(axis=1)
    beta = (wj * wj).sum(axis=1)
    gamma = (wi * wj).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        scale = np.sqrt(alpha * beta)
        rel = np.where(scale > 0, np.abs(gamma) / scale, 0.0)
        skip = (gamma == 0) | (np.abs(gamma) <= skip_tol * scale)
        rot = ~skip
        if not rot.any():
            return 0, len(skip), float(rel.max(initial=0.0))
        a, b, g = alpha[rot], beta[rot], gamma[rot]
        zeta = (b - a) / (2.0 * g)
        sign = np.where(zeta >= 0, 1.0, -1.0).astype(zeta.dtype, copy=False)
        t = sign / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
    c = (1.0 / np.sqrt(1.0 + t * t))[:, None]
    s = c * t[:, None]

    ri = idx_i[rot]
    rj = idx_j[rot]
    wi = wi[rot]
    wj = wj[rot]
    work[ri] = c * wi - s * wj
    work[rj] = s * wi + c * wj
    vi = acc[ri]
    vj = acc[rj]
    acc[ri] = c * vi - s * vj
    acc[rj] = s * vi + c * vj
    applied = int(rot.sum())
    return applied, len(rot) - applied, float(rel.max(initial=0.0))
