import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy import stats

from robust3s.errors import UsageError
from robust3s.simulation import (
    CovariateModel,
    Scenario,
    ScenarioConfig,
    contaminate_casewise,
    contaminate_cellwise,
    coverage,
    ci_length,
    dichotomize,
    format_config,
    gen_clean,
    gen_mixed,
    leverage_direction,
    model_stats,
    mse,
    plot_rows,
    random_beta,
    random_correlation,
    read_config,
    results_frame,
    results_payload,
    run_grid,
    run_scenario,
    write_config,
)
from robust3s.simulation.design import marginal
from robust3s.simulation.estimators import resolve
from robust3s.simulation.runner import THREADS_ENV, worker_count
from robust3s.simulation.seeding import data_stream, estimator_seed


def test_random_correlation_two_dimensions():
    R = random_correlation(2, 100.0, seed=1)
    assert abs(R[0, 1]) == pytest.approx(99 / 101, abs=1e-6)


def test_random_correlation_properties():
    for seed in range(50):
        R = random_correlation(15, 100.0, seed=seed)
        assert_array_equal(np.diag(R), 1.0)
        assert_allclose(R, R.T)
        assert np.linalg.eigvalsh(R).min() > 0
        assert 80 <= np.linalg.cond(R) <= 125


def test_random_beta_norm():
    assert np.linalg.norm(random_beta(15, 10.0, seed=3)) == pytest.approx(10.0, abs=1e-12)
    assert abs(random_beta(1, 10.0, seed=4)[0]) == pytest.approx(10.0)


def test_random_beta_directions_are_centered():
    gen = np.random.default_rng(0)
    draws = np.array([random_beta(3, 10.0, gen) for _ in range(10_000)])
    assert np.all(np.abs(draws.mean(axis=0)) < 3 / math.sqrt(10_000) * 10.0)


def test_gen_clean_normal_model():
    cfg = ScenarioConfig(n=100_000, p=4)
    data = gen_clean(cfg, seed=2)
    assert np.max(np.abs(np.cov(data.X, rowvar=False) - data.Sigma)) < 0.02
    residual_sd = np.std(data.y - data.X @ data.beta)
    assert residual_sd == pytest.approx(0.5, rel=0.02)
    assert data.D is None


def test_gen_clean_nonnormal_marginals():
    cfg = ScenarioConfig(n=10_000, p=15, covariate_model=CovariateModel.NONNORMAL)
    data = gen_clean(cfg, seed=5)
    assert np.all(data.X[:, 12:15] >= 1.0)
    for j in range(15):
        ks = stats.kstest(data.X[:, j], marginal(j).cdf).statistic
        assert ks < 1.36 / math.sqrt(cfg.n) * 1.5
    assert np.all(np.isfinite(data.X))


def test_gen_mixed_design():
    cfg = ScenarioConfig(n=400, p=12, p_d=3)
    data = gen_clean(cfg, seed=6)
    assert data.D.shape == (400, 3)
    assert set(np.unique(data.D)) <= {0.0, 1.0}
    assert data.beta.shape == (15,)
    assert data.design.shape == (400, 15)
    assert_array_equal(gen_mixed(cfg, seed=6).X, data.X)


def test_dichotomize():
    latent = np.random.default_rng(8).standard_normal((100_000, 1))
    assert 0.24 <= dichotomize(latent, [0.25]).mean() <= 0.26
    assert_array_equal(dichotomize(np.array([[-0.1], [0.0], [0.1]]), [0.5]).ravel(), [1.0, 1.0, 0.0])
    assert dichotomize(latent, [1.0]).all()


def test_cellwise_contamination_counts():
    cfg = ScenarioConfig(n=300, p=15)
    data = gen_clean(cfg, seed=1)
    stats_ = model_stats(cfg, data.beta)
    X, y = contaminate_cellwise(data.X, data.y, 0.05, 10.0, stats_, seed=2)
    changed = X != data.X
    assert changed.sum() == math.floor(0.05 * 300 * 15)
    assert np.all(X[changed] == 10.0)
    assert (y != data.y).sum() == 15
    assert np.all(y[y != data.y] == 10.0 * 0.5)

    X0, y0 = contaminate_cellwise(data.X, data.y, 0.0, 10.0, stats_, seed=2)
    assert_array_equal(X0, data.X)
    assert_array_equal(y0, data.y)


def test_casewise_contamination():
    cfg = ScenarioConfig(n=300, p=5)
    data = gen_clean(cfg, seed=3)
    v = leverage_direction(data.Sigma)
    assert v @ np.linalg.solve(data.Sigma, v) == pytest.approx(1.0, abs=1e-10)
    X, y = contaminate_casewise(data.X, data.y, 0.1, 5.0, 8.0, data.Sigma, data.beta, 0.5, seed=4)
    rows = np.flatnonzero(np.any(X != data.X, axis=1))
    assert rows.size == 30
    assert_allclose(X[rows], np.tile(8.0 * v, (30, 1)))


def test_leverage_direction_identity():
    v = leverage_direction(np.eye(4))
    assert np.linalg.norm(v) == pytest.approx(1.0)


def test_metrics():
    assert mse([1.0, 2.0], [1.0, 4.0]) == 2.0
    ci = np.array([[0.0, 1.0], [2.0, 3.0]])
    assert coverage(ci, [0.5, 5.0]) == 0.5
    assert ci_length(ci) == 1.0


def test_scenario_config_validation():
    with pytest.raises(UsageError):
        ScenarioConfig(epsilon=0.6)
    with pytest.raises(UsageError):
        ScenarioConfig(k=-1.0)
    with pytest.raises(UsageError):
        ScenarioConfig(replicates=0)
    assert ScenarioConfig().case_size == 8.0
    assert ScenarioConfig(p=12, p_d=3).case_size == 7.0


def test_config_round_trip(tmp_path):
    cfg = ScenarioConfig(n=150, p=5, scenario=Scenario.CELLWISE, epsilon=0.05, k=3.0, replicates=7, seed=11)
    path = tmp_path / "scenario.cfg"
    write_config(cfg, path)
    assert read_config(path) == cfg
    assert "scenario=cellwise" in format_config(cfg)


def test_seed_streams_do_not_depend_on_estimators():
    a = data_stream(5, 3).standard_normal(4)
    b = data_stream(5, 3).standard_normal(4)
    assert_array_equal(a, b)
    assert estimator_seed(5, 3, "3S").spawn_key != estimator_seed(5, 3, "LS").spawn_key


def test_resolve_estimators():
    assert resolve(["3s", "ls", "oracle"]) == ("3S", "LS", "oracle")
    with pytest.raises(UsageError):
        resolve(["mm"])


def test_worker_count(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "2")
    assert worker_count(10) == 2
    assert worker_count(1) == 1
    monkeypatch.setenv(THREADS_ENV, "bogus")
    assert worker_count(3) >= 1


def test_oracle_scenario():
    cfg = ScenarioConfig(n=60, p=3, replicates=3, seed=1)
    result = run_scenario(cfg, ["oracle"], workers=1)
    summary = result.summary("oracle")
    assert summary.mse_bar == 0.0
    assert summary.cr_bar is None
    assert summary.n_ok == 3


def test_scenario_determinism_under_parallelism():
    cfg = ScenarioConfig(n=80, p=3, scenario=Scenario.CELLWISE, epsilon=0.05, k=5.0, replicates=4, seed=9)
    sequential = run_scenario(cfg, ["LS", "oracle"], workers=1)
    parallel = run_scenario(cfg, ["LS", "oracle"], workers=2)
    assert sequential.records == parallel.records
    assert sequential.summaries == parallel.summaries


def test_adding_estimator_keeps_data():
    cfg = ScenarioConfig(n=80, p=3, replicates=2, seed=4)
    alone = run_scenario(cfg, ["LS"], workers=1)
    both = run_scenario(cfg, ["oracle", "LS"], workers=1)
    assert alone.summary("LS") == both.summary("LS")


def test_run_grid_and_outputs():
    base = ScenarioConfig(n=60, p=3, replicates=2, seed=2)
    results = run_grid(base, [(Scenario.CLEAN, 0.0), (Scenario.CASEWISE, 0.1)], [1.0, 5.0], ["LS"], workers=1)
    assert [r.config.scenario for r in results] == [Scenario.CLEAN, Scenario.CASEWISE, Scenario.CASEWISE]
    frame = results_frame(results)
    assert len(frame) == 3
    assert set(frame.columns) >= {"scenario", "k", "estimator", "mse_bar", "cr_bar", "cil_bar"}
    rows = plot_rows(results)
    assert {r["metric"] for r in rows} == {"mse", "cr", "cil"}
    payload = results_payload(results)
    assert payload[1]["config"]["scenario"] == "casewise"
    assert len(payload[0]["replicates"]) == 2


def test_clean_smoke_grid():
    fast_estimators = ("3S", "2S", "LS")
    cfg = ScenarioConfig(n=150, p=5, replicates=2, seed=3)
    result = run_scenario(cfg, fast_estimators, workers=1)
    assert result.estimators == list(fast_estimators)
    for s in result.summaries:
        assert s.mse_bar is not None and s.mse_bar >= 0
        assert 0.0 <= s.cr_bar <= 1.0
        assert s.cil_bar >= 0


@pytest.mark.slow
def test_clean_efficiency():
    cfg = ScenarioConfig(n=300, p=15, replicates=200, seed=2024)
    result = run_scenario(cfg, ["3S", "LS"])
    assert 0.002 <= result.summary("3S").mse_bar <= 0.010
    assert 0.002 <= result.summary("LS").mse_bar <= 0.007


@pytest.mark.slow
def test_cellwise_robustness():
    cfg = ScenarioConfig(n=300, p=15, scenario=Scenario.CELLWISE, epsilon=0.05, k=10.0, replicates=200, seed=2024)
    result = run_scenario(cfg, ["3S", "2S", "LS"])
    assert result.summary("3S").mse_bar < 1.0
    assert result.summary("2S").mse_bar > 1.5
    assert result.summary("LS").mse_bar > 3.0


@pytest.mark.slow
def test_casewise_robustness():
    base = ScenarioConfig(n=300, p=15, replicates=200, seed=2024)
    results = run_grid(base, [(Scenario.CASEWISE, 0.1)], [3.0, 9.0, 15.0], ["3S", "2S", "LS"])
    worst = {name: max(r.summary(name).mse_bar for r in results) for name in ("3S", "2S", "LS")}
    assert worst["3S"] < 0.35
    assert worst["2S"] < 0.25
    assert worst["LS"] > 5.0


@pytest.mark.slow
def test_mixed_design_clean():
    cfg = ScenarioConfig(n=300, p=12, p_d=3, replicates=200, seed=2024)
    result = run_scenario(cfg, ["3S"])
    assert result.summary("3S").mse_bar < 0.008


@pytest.mark.slow
def test_inliers_hurt_more_than_gross_cells():
    base = ScenarioConfig(n=300, p=15, replicates=200, seed=2024)
    mild, gross = run_grid(base, [(Scenario.CELLWISE, 0.05)], [2.0, 10.0], ["3S"])
    assert mild.config.k == 2.0 and gross.config.k == 10.0
    assert mild.summary("3S").mse_bar > gross.summary("3S").mse_bar


@pytest.mark.slow
def test_coverage_reaches_nominal_level():
    clean = run_scenario(ScenarioConfig(n=1000, p=15, replicates=200, seed=2024), ["3S"])
    assert 0.92 <= clean.summary("3S").cr_bar <= 0.97

    cellwise = ScenarioConfig(n=1000, p=15, scenario=Scenario.CELLWISE, epsilon=0.05, k=5.0, replicates=200, seed=2024)
    result = run_scenario(cellwise, ["3S", "2S"])
    assert result.summary("3S").cr_bar >= 0.88
    assert result.summary("2S").cr_bar <= result.summary("3S").cr_bar


@pytest.mark.slow
def test_interval_lengths():
    clean = run_scenario(ScenarioConfig(n=300, p=15, replicates=200, seed=2024), ["3S", "2S"])
    three, two = clean.summary("3S"), clean.summary("2S")
    assert 0.19 <= three.cil_bar <= 0.30
    assert three.cil_bar <= two.cil_bar

    cellwise = ScenarioConfig(n=300, p=15, scenario=Scenario.CELLWISE, epsilon=0.05, k=5.0, replicates=200, seed=2024)
    result = run_scenario(cellwise, ["3S", "2S"])
    assert result.summary("2S").cil_bar / result.summary("3S").cil_bar > 2.0


@pytest.mark.slow
def test_mixed_design_cellwise():
    base = ScenarioConfig(n=300, p=12, p_d=3, scenario=Scenario.CELLWISE, k=10.0, replicates=200, seed=2024)
    assert run_scenario(base.replace(epsilon=0.05), ["3S"]).summary("3S").mse_bar < 0.7
    assert run_scenario(base.replace(epsilon=0.01), ["LS"]).summary("LS").mse_bar > 1.5


@pytest.mark.slow
def test_nonnormal_covariates():
    base = ScenarioConfig(n=300, p=15, replicates=200, seed=2024, covariate_model=CovariateModel.NONNORMAL)
    assert run_scenario(base, ["3S"]).summary("3S").mse_bar < 0.03
    for result in run_grid(base, [(Scenario.CELLWISE, 0.05)], [2.0, 5.0, 10.0], ["3S", "2S"]):
        assert result.summary("3S").mse_bar < 0.03
        assert result.summary("2S").mse_bar > 1.0
