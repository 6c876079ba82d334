import os

import numpy as np
import pytest

import deepesn

LASER = os.path.join(os.path.dirname(__file__), "..", "..", "data", "santafe_laser.txt")


def test_numerics_match_numpy():
    rng = np.random.default_rng(3)
    a = rng.uniform(-1, 1, (6, 6))
    assert deepesn.spectral_radius(a) == pytest.approx(max(abs(np.linalg.eigvals(a))), rel=1e-9)
    assert deepesn.operator_norm_2(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-6)
    x = rng.uniform(-1, 1, (4, 30))
    np.testing.assert_allclose(deepesn.singular_values(x), np.linalg.svd(x, compute_uv=False), rtol=1e-9)


def test_reservoir_scaling_and_states():
    res = deepesn.init_reservoir(n_layers=3, units=20, seed=7, interlayer_scaling=2.0)
    assert res.w_in.shape == (20, 1)
    assert len(res.w_inter) == 2 and len(res.w_rec) == 3
    assert max(abs(np.linalg.eigvals(res.w_rec[1]))) == pytest.approx(0.9, rel=1e-6)
    assert np.linalg.norm(res.w_inter[0], 2) == pytest.approx(2.0, rel=1e-6)

    u = np.linspace(0, 0.5, 120)
    states = res.run(u, washout=20)
    assert [s.shape for s in states] == [(20, 100)] * 3
    assert np.all(np.abs(states[2]) < 1)

    # layer 1 by hand
    x = np.zeros(20)
    for t in range(120):
        x = np.tanh(res.w_in[:, 0] * u[t] + res.w_rec[0] @ x)
    np.testing.assert_allclose(states[0][:, -1], x, atol=1e-12)


def test_measures():
    assert deepesn.instantaneous_entropy(np.zeros(4)) == pytest.approx(
        -np.log(1 / np.sqrt(2 * np.pi * 1e-16)), rel=1e-12
    )
    rank_one = np.outer(np.arange(1, 6), np.ones(40)) / 10
    assert deepesn.uncoupled_dynamics(rank_one) == 1
    assert deepesn.condition_number(np.eye(3)) == pytest.approx(1.0)
    with pytest.raises(deepesn.IllConditionedError):
        deepesn.condition_number(rank_one)


def test_readouts_agree():
    rng = np.random.default_rng(5)
    x = rng.uniform(-1, 1, (4, 200))
    w_star = np.array([[0.5, -0.2, 0.1, 0.3]])
    y = w_star @ x
    w_direct = deepesn.train_direct(x, y)
    np.testing.assert_allclose(w_direct, w_star, atol=1e-10)
    w_lms, trace = deepesn.train_lms(x, y, learning_rate=0.05, epochs=500)
    assert trace.shape == (500,)
    np.testing.assert_allclose(w_lms, w_star, atol=1e-6)
    np.testing.assert_allclose(deepesn.predict(w_direct, x), y, atol=1e-10)
    with pytest.raises(deepesn.DimensionError):
        deepesn.train_direct(x, y[:, :10])


def test_data():
    u, y = deepesn.generate_narma10(50, 1)
    assert u.shape == y.shape == (50,)
    # empty history before the series start
    assert y[0] == pytest.approx(0.1)
    assert np.isfinite(y).all()
    assert np.all((u >= 0) & (u <= 0.5))
    laser = deepesn.load_laser(LASER)
    assert laser.shape[0] >= 10093
    with pytest.raises(deepesn.DataError):
        deepesn.load_laser("/nonexistent/laser.txt")


def test_small_sweeps():
    cfg = {"layers": 2, "units": 10, "realizations": 2, "train-len": 300, "test-len": 100,
           "washout": 100, "omega-il": [2.0], "lms-epochs": 5}
    rows = deepesn.richness_sweep(cfg)
    assert {r["metric"] for r in rows} == {"ase", "ud", "log10_kappa"}
    assert {r["layer"] for r in rows} == {1, 2}
    assert all(r["n"] == 2 for r in rows)
    assert deepesn.richness_sweep(cfg) == rows
    pred = deepesn.prediction_sweep(cfg)
    assert {r["metric"] for r in pred} == {"test_mse_lms", "test_mse_direct"}
    with pytest.raises(deepesn.InvalidArgument):
        deepesn.richness_sweep({"layers": 0})
