"""Row-pair one-sided Jacobi SVD with a cyclic processing-unit schedule."""

__version__ = "0.1.0"

from .errors import ConfigError, DimensionError, MatrixParseError, ValidationError
from .matrix import matmul, read_matrix, transpose, write_matrix
from .metrics import ErrorReport, error_report, error_svd, error_u_gram, error_u_orth, error_v_orth
from .rotation import RotationParams, apply_rotation, compute_params
from .schedule import PuConfig, SweepSchedule, build_schedule, rotations_per_sweep
from .solver import SolverConfig, SvdResult, dsb_svd, hestenes_svd, normalize_and_assemble

__all__ = [
    "ConfigError", "DimensionError", "MatrixParseError", "ValidationError",
    "matmul", "read_matrix", "transpose", "write_matrix",
    "ErrorReport", "error_report", "error_svd", "error_u_gram", "error_u_orth", "error_v_orth",
    "RotationParams", "apply_rotation", "compute_params",
    "PuConfig", "SweepSchedule", "build_schedule", "rotations_per_sweep",
    "SolverConfig", "SvdResult", "dsb_svd", "hestenes_svd", "normalize_and_assemble",
]
