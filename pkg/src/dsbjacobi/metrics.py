"""Decomposition and orthogonality error measures.

Every measure is a sum of squared entries (a squared Frobenius norm, not its
root):

- ``error_svd``: A - U diag(sigma) V^T
- ``error_u_orth``: U U^T - I_m.  For a thin U with m > n this cannot drop
  below m - n, since U U^T has rank at most n.
- ``error_u_gram``: U^T U - I_n, the usable convergence measure for thin U
- ``error_v_orth``: V V^T - I_n
"""

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionError


def _sq_sum(e):
    return float(np.sum(np.square(e, dtype=np.float64)))


def error_svd(a, u, sigma, v):
    a = np.asarray(a, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.ndim == 2:
        sigma = np.diag(sigma)
    k = sigma.shape[0]
    if u.shape != (a.shape[0], k) or v.shape != (a.shape[1], k):
        raise DimensionError(
            f"factor shapes U{u.shape}, sigma({k}), V{v.shape} do not match A{a.shape}"
        )
    return _sq_sum(a - (u * sigma) @ v.T)


def error_u_orth(u):
    u = np.asarray(u, dtype=np.float64)
    return _sq_sum(u @ u.T - np.eye(u.shape[0]))


def error_u_gram(u):
    u = np.asarray(u, dtype=np.float64)
    return _sq_sum(u.T @ u - np.eye(u.shape[1]))


def error_v_orth(v):
    v = np.asarray(v, dtype=np.float64)
    return _sq_sum(v @ v.T - np.eye(v.shape[0]))


def max_offdiag_gram(u):
    """Largest |u_i . u_j| over distinct columns i != j."""
    u = np.asarray(u, dtype=np.float64)
    g = np.abs(u.T @ u)
    np.fill_diagonal(g, 0.0)
    return float(g.max(initial=0.0))


@dataclass(frozen=True)
class ErrorReport:
    norm_error_svd: float
    norm_error_uq: float
    norm_error_uq_gram: float
    norm_error_vq: float
    max_abs_offdiag_utu: float

    def to_dict(self):
        return asdict(self)


def error_report(a, u, sigma, v):
    return ErrorReport(
        norm_error_svd=error_svd(a, u, sigma, v),
        norm_error_uq=error_u_orth(u),
        norm_error_uq_gram=error_u_gram(u),
        norm_error_vq=error_v_orth(v),
        max_abs_offdiag_utu=max_offdiag_gram(u),
    )
