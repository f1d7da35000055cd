import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dsbjacobi.errors import DimensionError, MatrixParseError, ValidationError
from dsbjacobi.matrix import as_matrix, matmul, read_matrix, transpose, write_matrix

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
shapes = st.tuples(st.integers(1, 9), st.integers(1, 9))


def test_transpose_examples():
    np.testing.assert_array_equal(transpose([[5.0]]), [[5.0]])
    np.testing.assert_array_equal(
        transpose([[1, 2, 3], [4, 5, 6]]), [[1, 4], [2, 5], [3, 6]]
    )


def test_transpose_is_contiguous():
    x = np.arange(12.0).reshape(3, 4)
    assert transpose(x).flags.c_contiguous


@given(arrays(np.float64, shapes, elements=finite))
def test_transpose_involution(x):
    np.testing.assert_array_equal(transpose(transpose(x)), x)


def test_transpose_roundtrip_seeded():
    x = np.random.default_rng(3).standard_normal((7, 3))
    assert np.array_equal(transpose(transpose(x)), x)


def test_matmul_examples():
    x = np.random.default_rng(1).standard_normal((3, 5))
    np.testing.assert_array_equal(matmul(np.eye(3), x), x)
    np.testing.assert_array_equal(matmul([[1, 2], [3, 4]], [[5], [6]]), [[17], [39]])


def test_matmul_transpose_identity():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((4, 3))
    b = rng.standard_normal((3, 5))
    np.testing.assert_allclose(transpose(matmul(a, b)), matmul(transpose(b), transpose(a)), rtol=1e-14)


def test_matmul_associative():
    rng = np.random.default_rng(4)
    a, b, c = rng.standard_normal((4, 5)), rng.standard_normal((5, 3)), rng.standard_normal((3, 6))
    left = matmul(matmul(a, b), c)
    right = matmul(a, matmul(b, c))
    # floating-point matmul is only associative up to roundoff
    assert np.linalg.norm(left - right) <= 1e-12 * np.linalg.norm(left)


def test_matmul_shape_mismatch():
    with pytest.raises(DimensionError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_as_matrix_validation():
    with pytest.raises(ValidationError):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(ValidationError):
        as_matrix(np.ones((0, 3)))
    with pytest.raises(DimensionError):
        as_matrix([1.0, 2.0])


def test_csv_read(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("1,2\n3,4\n")
    np.testing.assert_array_equal(read_matrix(p), [[1, 2], [3, 4]])


def test_csv_ragged_row_names_line(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("1,2\n3,4\n5,6,7\n")
    with pytest.raises(MatrixParseError) as exc:
        read_matrix(p)
    assert exc.value.line == 3
    assert "line 3" in str(exc.value)


def test_csv_non_finite(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("1,inf\n")
    with pytest.raises(ValidationError):
        read_matrix(p)


def test_csv_roundtrip(tmp_path):
    x = np.random.default_rng(5).standard_normal((16, 8)) * 1e3
    p = tmp_path / "x.csv"
    write_matrix(x, p)
    y = read_matrix(p)
    assert np.all(np.abs(y - x) <= 1e-15 * np.abs(x))


def test_bin_roundtrip_bit_exact(tmp_path):
    x = np.random.default_rng(6).standard_normal((16, 8))
    p = tmp_path / "x.bin"
    write_matrix(x, p)
    y = read_matrix(p)
    assert y.dtype == np.float64
    assert y.tobytes() == x.tobytes()


def test_bin_float32(tmp_path):
    x = np.random.default_rng(7).standard_normal((3, 4)).astype(np.float32)
    p = tmp_path / "x.bin"
    write_matrix(x, p)
    raw = p.read_bytes()
    assert raw[:4] == b"DSBM" and raw[4] == 1 and raw[5] == 4
    assert len(raw) == 4 + 1 + 1 + 16 + 12 * 4
    y = read_matrix(p)
    assert y.dtype == np.float32
    assert np.array_equal(x, y)


def test_bin_header_layout(tmp_path):
    p = tmp_path / "x.bin"
    write_matrix(np.array([[1.0, 2.0, 3.0]]), p)
    raw = p.read_bytes()
    assert raw[:6] == b"DSBM\x01\x08"
    assert int.from_bytes(raw[6:14], "little") == 1
    assert int.from_bytes(raw[14:22], "little") == 3
    assert np.frombuffer(raw[22:], "<f8").tolist() == [1.0, 2.0, 3.0]


def test_bin_bad_magic(tmp_path):
    p = tmp_path / "x.bin"
    p.write_bytes(b"NOPE" + bytes(30))
    with pytest.raises(MatrixParseError):
        read_matrix(p)


@settings(max_examples=30)
@given(arrays(np.float64, shapes, elements=finite))
def test_csv_roundtrip_property(tmp_path_factory, x):
    p = tmp_path_factory.mktemp("rt") / "x.csv"
    write_matrix(x, p)
    assert np.array_equal(read_matrix(p), x)
