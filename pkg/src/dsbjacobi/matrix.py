"""Dense row-major matrices and their on-disk formats.

Matrices are plain C-contiguous 2-D numpy arrays of float64 (or float32).
The helpers here only add validation and the two file formats:

csv
    One matrix row per line, comma separated, no header.  Values are written
    with 17 significant digits so float64 data round-trips exactly.
bin
    ``b"DSBM"``, version byte (1), element-width byte (4 or 8), rows and cols
    as little-endian uint64, then rows*cols little-endian IEEE-754 values in
    row-major order.
"""

import struct
from pathlib import Path

import numpy as np

from .errors import DimensionError, MatrixParseError, ValidationError

MAGIC = b"DSBM"
BIN_VERSION = 1
_HEADER = struct.Struct("<4sBBQQ")
_DTYPES = {4: np.dtype("<f4"), 8: np.dtype("<f8")}


def as_matrix(a, dtype=np.float64, check_finite=True):
    """Return ``a`` as a C-contiguous 2-D array of ``dtype``.

    Raises ValidationError for empty or non-finite input and DimensionError
    when ``a`` is not two-dimensional.
    """
    arr = np.ascontiguousarray(a, dtype=dtype)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got {arr.ndim} dimension(s)")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f"matrix must have at least one row and column, got {arr.shape}")
    if check_finite and not np.isfinite(arr).all():
        raise ValidationError("matrix contains NaN or Inf entries")
    return arr


def transpose(a):
    return np.ascontiguousarray(np.asarray(a).T)


def matmul(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def _format_for(path, fmt):
    if fmt is not None:
        if fmt not in ("csv", "bin"):
            raise ValueError(f"unknown matrix format {fmt!r}")
        return fmt
    return "bin" if Path(path).suffix.lower() == ".bin" else "csv"


def read_matrix(path, fmt=None):
    """Read a matrix written as csv or bin (inferred from the suffix if ``fmt`` is None)."""
    fmt = _format_for(path, fmt)
    if fmt == "bin":
        return _read_bin(path)
    return _read_csv(path)


def write_matrix(m, path, fmt=None):
    fmt = _format_for(path, fmt)
    m = np.asarray(m)
    if m.ndim == 1:
        m = m[:, None]
    if fmt == "bin":
        _write_bin(m, path)
    else:
        _write_csv(m, path)


def _read_csv(path):
    rows = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise MatrixParseError(
                    f"expected {width} fields, found {len(fields)}", line=lineno
                )
            try:
                values = [float(f) for f in fields]
            except ValueError as exc:
                raise MatrixParseError(str(exc), line=lineno) from None
            if not all(np.isfinite(values)):
                raise ValidationError(f"line {lineno}: non-finite value")
            rows.append(values)
    if not rows:
        raise MatrixParseError("file contains no rows")
    return as_matrix(rows)


def _write_csv(m, path):
    with open(path, "w", encoding="utf-8") as fh:
        for row in m:
            fh.write(",".join(format(float(x), ".17g") for x in row))
            fh.write("\n")


def _read_bin(path):
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise MatrixParseError("truncated header")
    magic, version, width, rows, cols = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise MatrixParseError(f"bad magic {magic!r}")
    if version != BIN_VERSION:
        raise MatrixParseError(f"unsupported format version {version}")
    if width not in _DTYPES:
        raise MatrixParseError(f"unsupported element width {width}")
    expected = rows * cols * width
    payload = raw[_HEADER.size:]
    if len(payload) != expected:
        raise MatrixParseError(f"expected {expected} payload bytes, found {len(payload)}")
    data = np.frombuffer(payload, dtype=_DTYPES[width]).reshape(rows, cols)
    return as_matrix(data, dtype=_DTYPES[width].newbyteorder("="))


def _write_bin(m, path):
    width = m.dtype.itemsize if m.dtype in (np.float32, np.float64) else 8
    rows, cols = m.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, BIN_VERSION, width, rows, cols))
        fh.write(np.ascontiguousarray(m, dtype=_DTYPES[width]).tobytes())
