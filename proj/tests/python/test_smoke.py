"""Smoke tests for the python bindings."""

import math
import os
import subprocess

import numpy as np
import pytest

import sdfclass


def test_generators_and_oracles():
    data = sdfclass.gen_uniform_square(200, seed=3)
    assert data.n_samples == 200
    assert data.n_features == 2
    assert set(np.unique(data.labels)) == {-1.0, 1.0}
    assert sdfclass.indicator([0.5, 0.5]) == 1
    assert sdfclass.exact_sdf_quadrant([-0.3, -0.4]) == pytest.approx(-0.5)

    again = sdfclass.gen_uniform_square(200, seed=3)
    assert np.array_equal(again.features, data.features)


def test_split_shapes():
    data = sdfclass.gen_uniform_square(62, seed=1)
    train, test = sdfclass.split_2to1(data, seed=9)
    assert train.n_samples == 42
    assert test.n_samples == 20


def test_train_predict_roundtrip(tmp_path):
    data = sdfclass.gen_uniform_square(150, seed=5)
    model = sdfclass.train_sdf(data, gamma=1e-7)
    value, label = sdfclass.predict(model, [0.5, 0.5])
    assert label == 1
    value, label = sdfclass.predict(model, [-0.5, -0.5])
    assert label == -1

    path = str(tmp_path / "model.json")
    sdfclass.save_model(model, path)
    loaded = sdfclass.load_model(path)
    queries = np.array([[0.2, 0.3], [-0.4, 0.1], [0.9, -0.9]])
    assert np.array_equal(
        sdfclass.decision_values(loaded, queries),
        sdfclass.decision_values(model, queries),
    )


def test_csv_roundtrip(tmp_path):
    data = sdfclass.gen_checkerboard(40, grid=2, seed=8)
    path = str(tmp_path / "board.csv")
    sdfclass.save_csv(data, path)
    back = sdfclass.load_csv(path, label_column="label", positive_label="1")
    assert np.array_equal(back.features, data.features)
    assert np.array_equal(back.labels, data.labels)


def test_biased_offsets():
    offsets = sdfclass.run_biased_experiment()
    assert abs(offsets["sdf_linear"]) <= 1e-6
    assert offsets["psvm_linear"] == pytest.approx(-0.2, abs=1e-9)
    assert offsets["lsvm_linear"] == pytest.approx(-0.125, abs=1e-6)


def test_corner_experiment_is_deterministic():
    a = sdfclass.run_corner_experiment(50, 2, seed=4)
    b = sdfclass.run_corner_experiment(50, 2, seed=4)
    assert a.to_json() == b.to_json()
    assert len(a.sdf_error.per_trial) == 2


def test_knn_and_linear_baselines():
    toy = sdfclass.biased_toy()
    knn = sdfclass.make_knn(toy, 1)
    assert sdfclass.knn_predict(knn, [0.0, 0.9]) == 1
    sep = sdfclass.train_psvm_linear(toy, 0.5)
    assert sdfclass.separator_offset(sep) == pytest.approx(-0.2, abs=1e-9)


def test_solver_matches_numpy():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((20, 20))
    kernel = m @ m.T
    targets = rng.standard_normal(20)
    gamma = 1e-5
    alpha = sdfclass.solve_regularized(kernel, targets, gamma)
    expected = np.linalg.solve(kernel + 20 * gamma * np.eye(20), targets)
    assert np.allclose(alpha, expected, rtol=1e-9, atol=1e-12)


def test_error_translation():
    with pytest.raises(ValueError):
        sdfclass.gen_uniform_square(0, seed=1)
    with pytest.raises(RuntimeError):
        sdfclass.rmsd_sigma(np.zeros((3, 3)))


def test_cli_biased_if_available():
    cli = os.environ.get("SDFCLASS_CLI")
    if not cli:
        pytest.skip("SDFCLASS_CLI not set")
    out = subprocess.run([cli, "biased"], capture_output=True, text=True, check=True)
    assert "psvm_linear" in out.stdout


def test_benchmark_report_fields():
    data = sdfclass.gen_checkerboard(60, grid=2, seed=12)
    report = sdfclass.run_benchmark(data, 5, seed=2, gamma=1e-7)
    assert report.n_trials == 5
    assert 1 <= report.knn_best_k <= 10
    assert set(report.per_method) == {"knn", "rbfn", "svm", "sdf"}
    assert report.sharing_checks_passed
    assert "trial,method,error" in report.per_trial_csv()


def test_summarize_quartiles():
    stats = sdfclass.summarize([1.0, 2.0, 3.0, 4.0, 5.0])
    assert stats.median == 3.0
    assert stats.q1 == 2.0
    assert stats.q3 == 4.0
    assert stats.std == pytest.approx(math.sqrt(2.5))
