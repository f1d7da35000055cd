import csv
import json

import numpy as np
import pytest

from dsbjacobi.bench import (
    CSV_COLUMNS,
    ExperimentError,
    ExperimentSpec,
    generate_matrix,
    linear_fit_r2,
    resource_model,
    run_cell,
    run_iteration_sweep,
    run_pu_sweep,
    write_results,
)
from dsbjacobi.schedule import rotations_per_sweep


def test_generate_deterministic():
    assert np.array_equal(generate_matrix(8, 4, 42), generate_matrix(8, 4, 42))
    assert not np.array_equal(generate_matrix(8, 4, 42), generate_matrix(8, 4, 43))
    u = generate_matrix(8, 4, 42, "uniform01")
    assert u.min() >= 0 and u.max() < 1


def test_generate_normal_mean():
    x = generate_matrix(1000, 1, seed=123)
    assert abs(x.mean()) < 0.15


def test_generate_rejects():
    with pytest.raises(ValueError):
        generate_matrix(0, 3, 1)
    with pytest.raises(ValueError):
        generate_matrix(3, 3, 1, "cauchy")


def test_linear_fit_r2():
    x = np.arange(10.0)
    assert linear_fit_r2(x, 3 * x + 1) == pytest.approx(1.0)
    assert linear_fit_r2(x, (x - 4.5) ** 2) < 0.1


def test_resource_model():
    rm = resource_model(256, 64, 8)
    assert rm.num_pus == 8 and rm.total_ram_blocks == 32 and rm.rams_per_pu == 4
    assert (rm.words_per_u_ram, rm.words_per_v_ram) == (256, 64)
    assert rm.rotations_per_sweep == rotations_per_sweep(64, 8)
    assert rm.stages_per_sweep == 15
    assert resource_model(64, 256, 8) == rm


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec(repetitions=0)
    with pytest.raises(ValueError):
        ExperimentSpec(distribution="laplace")
    with pytest.raises(ValueError):
        ExperimentSpec(rows_per_pu_list=[3])


def test_iteration_sweep_rows():
    spec = ExperimentSpec(sizes=[(24, 24)], sweeps_list=[1, 2, 3, 8], repetitions=1)
    rows = run_iteration_sweep(spec)
    assert [r["sweeps"] for r in rows] == [1, 2, 3, 8]
    assert all(set(r) == set(CSV_COLUMNS) for r in rows)
    assert all(r["norm_error_svd"] <= 1e-9 and r["norm_error_vq"] <= 1e-14 for r in rows)
    assert rows[-1]["norm_error_uq_gram"] < rows[0]["norm_error_uq_gram"]
    assert all(r["platform"] == "software" for r in rows)


def test_pu_sweep_rows():
    spec = ExperimentSpec(
        sizes=[(32, 32)], rows_per_pu_list=[2, 4, 8, 16], sweeps_list=[6], repetitions=1
    )
    rows = run_pu_sweep(spec)
    assert [r["rows_per_pu"] for r in rows] == [2, 4, 8, 16]
    for r in rows:
        per_sweep = rotations_per_sweep(32, r["rows_per_pu"])
        assert r["rotations_applied"] + r["rotations_skipped"] == 6 * per_sweep
        assert r["norm_error_svd"] <= 1e-10 and r["norm_error_vq"] <= 1e-14
        assert r["total_ram_blocks"] == 4 * 32 // r["rows_per_pu"]


def test_failing_cell_is_tagged():
    spec = ExperimentSpec(repetitions=1)
    with pytest.raises(ExperimentError) as exc:
        run_cell(np.array([[np.nan, 1.0]]), "x", spec, 2, 1)
    assert exc.value.cell["sweeps"] == 1


def _strip_time(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        r.pop("time_ms")
    return rows


def test_write_results_stable(tmp_path):
    spec = ExperimentSpec(sizes=[(16, 8)], sweeps_list=[1, 2], repetitions=1, seed=7)
    a, meta = write_results(run_iteration_sweep(spec), tmp_path / "a.csv", spec)
    b, _ = write_results(run_iteration_sweep(spec), tmp_path / "b.csv", spec)
    assert a.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert _strip_time(a) == _strip_time(b)
    info = json.loads(meta.read_text())
    assert info["spec"]["seed"] == 7 and info["platform"] == "software"
    assert info["spec"]["distribution"] == "standard_normal"
