import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy import integrate, stats

from robust3s.errors import DegenerateDesignError, SingularMatrixError
from robust3s.scatter import (
    RhoFunction,
    RhoKind,
    ScatterConfig,
    consistency_constant,
    gs_scale,
    gse,
    pairwise_initial,
    partial_mahalanobis,
    rho_derivative,
    rho_eval,
    s_estimator_complete,
    scale_residual,
)

BISQUARE = RhoFunction(RhoKind.BISQUARE)
HUBER = RhoFunction(RhoKind.HUBER)


def test_rho_values():
    assert rho_eval(BISQUARE, 0.5) == pytest.approx(0.875)
    assert rho_eval(BISQUARE, 2.0) == 1.0
    assert rho_eval(BISQUARE, 0.0) == 0.0
    assert rho_eval(HUBER, 1.0) == pytest.approx(0.5)
    assert rho_eval(HUBER, 3.0) == 1.0


def test_rho_rejects_negative_argument():
    with pytest.raises(ValueError):
        rho_eval(BISQUARE, -0.1)


@pytest.mark.parametrize("rho", [BISQUARE, HUBER], ids=["bisquare", "huber"])
def test_rho_derivative_matches_finite_difference(rho):
    t = np.array([0.05, 0.2, 0.4, 0.7, 0.9, 1.2, 1.35, 2.0, 3.0])
    t = t[np.abs(t - rho.rejection_point) > 1e-3]
    h = 1e-6
    numeric = (rho_eval(rho, t + h) - rho_eval(rho, t - h)) / (2 * h)
    assert_allclose(rho_derivative(rho, t), numeric, atol=1e-6)


def test_rho_is_bounded_and_nondecreasing():
    t = np.linspace(0.0, 3.0, 301)
    for rho in (BISQUARE, HUBER):
        values = rho.rho(t)
        assert np.all(np.diff(values) >= 0)
        assert values.max() == 1.0


def test_partial_mahalanobis_examples():
    assert partial_mahalanobis([1, 0], [1, 1], [0, 0], np.eye(2)) == (1.0, 2)
    assert partial_mahalanobis([3, 999], [1, 0], [0, 0], np.eye(2)) == (9.0, 1)


def test_partial_mahalanobis_matches_solve(rng):
    A = rng.standard_normal((4, 4))
    S = A @ A.T + 4 * np.eye(4)
    z, m = rng.standard_normal(4), rng.standard_normal(4)
    d, k = partial_mahalanobis(z, np.ones(4), m, S)
    x = np.linalg.solve(S, z - m)
    assert k == 4
    assert_allclose(d, (z - m) @ x, rtol=1e-10)


def test_partial_mahalanobis_singular_block():
    S = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(SingularMatrixError, match="condition number"):
        partial_mahalanobis([1.0, 2.0], [1, 1], [0, 0], S)


def test_consistency_constants_increase_with_dimension():
    c = [consistency_constant(k) for k in range(1, 17)]
    assert all(a < b for a, b in zip(c, c[1:]))
    assert all(v > 0 for v in c)


def test_consistency_constants_grow_as_b_shrinks():
    for k in (1, 3, 8):
        assert consistency_constant(k, 0.25) > consistency_constant(k, 0.5)


@pytest.mark.parametrize("k", [1, 2, 5, 16])
def test_consistency_constant_against_quadrature(k):
    c = consistency_constant(k)
    value, _ = integrate.quad(lambda x: rho_eval(BISQUARE, x / c) * stats.chi2.pdf(x, k), 0, c, limit=200)
    value += stats.chi2.sf(c, k)
    assert value == pytest.approx(0.5, abs=1e-7)


def test_gs_scale_solves_constraint(rng):
    d = rng.chisquare(3, size=500)
    c = consistency_constant(3)
    s = gs_scale(d, c)
    assert abs(scale_residual(d, c, s)) < 1e-10
    assert_allclose(gs_scale(7.0 * d, c), 7.0 * s, rtol=1e-9)


def test_gs_scale_all_zero_distances():
    with pytest.raises(DegenerateDesignError, match="degenerate design"):
        gs_scale(np.zeros(10), 1.0)


def test_s_estimator_on_normal_data(fast_cfg):
    Z = np.random.default_rng(11).standard_normal((2000, 4))
    est = s_estimator_complete(Z, fast_cfg, seed=1)
    assert np.max(np.abs(est.m)) < 0.1
    assert np.max(np.abs(est.S - np.eye(4))) < 0.15
    assert est.converged
    assert_allclose(est.S, est.S.T, atol=1e-10)
    assert np.linalg.eigvalsh(est.S).min() > 0
    assert np.all((est.case_weights >= 0) & (est.case_weights <= 1))


def test_s_estimator_satisfies_scale_constraint(rng, fast_cfg):
    Z = rng.standard_normal((400, 4))
    Z[:30] += 15.0
    est = s_estimator_complete(Z, fast_cfg, seed=5)
    assert est.converged
    c = fast_cfg.constant(4)
    assert abs(scale_residual(est.case_distances, c, 1.0)) < 1e-8
    assert abs(scale_residual(est.case_distances * est.gs_scale, c, est.gs_scale)) < 1e-8


def test_s_estimator_is_deterministic(rng, fast_cfg):
    Z = rng.standard_normal((150, 3))
    a = s_estimator_complete(Z, fast_cfg, seed=5)
    b = s_estimator_complete(Z, fast_cfg, seed=5)
    assert_array_equal(a.m, b.m)
    assert_array_equal(a.S, b.S)
    assert a.gs_scale == b.gs_scale


def test_s_estimator_affine_equivariance(rng, fast_cfg):
    Z = rng.standard_normal((200, 3))
    A = np.array([[2.0, 0.3, 0.0], [0.0, 1.5, -0.4], [0.2, 0.0, 0.8]])
    shift = np.array([1.0, -2.0, 5.0])
    base = s_estimator_complete(Z, fast_cfg, seed=9)
    moved = s_estimator_complete(Z @ A.T + shift, fast_cfg, seed=9)
    assert_allclose(moved.m, A @ base.m + shift, atol=1e-5)
    assert_allclose(moved.S, A @ base.S @ A.T, rtol=1e-5, atol=1e-5)


def test_s_estimator_rejects_gross_outliers(rng, fast_cfg):
    Z = rng.standard_normal((50, 2))
    Z[:10] = 1e6 + rng.standard_normal((10, 2))
    est = s_estimator_complete(Z, fast_cfg, seed=2)
    assert_array_equal(est.case_weights[:10], 0.0)
    assert est.zero_weight_fraction >= 0.2


def test_s_estimator_breakdown_smoke(rng, fast_cfg):
    clean = rng.standard_normal((60, 2))
    Z = np.vstack([clean, np.full((40, 2), 1e6)])
    est = s_estimator_complete(Z, fast_cfg, seed=4)
    assert np.all(est.m >= clean.min(axis=0)) and np.all(est.m <= clean.max(axis=0))


def test_s_estimator_needs_enough_cases():
    with pytest.raises(DegenerateDesignError):
        s_estimator_complete(np.random.default_rng(0).standard_normal((6, 3)))


def test_gse_with_complete_data_reduces_to_s_estimator(rng, fast_cfg):
    Z = rng.standard_normal((120, 3))
    full = gse(Z, np.ones(Z.shape, dtype=bool), fast_cfg, seed=3)
    direct = s_estimator_complete(Z, fast_cfg, seed=3)
    assert_array_equal(full.m, direct.m)
    assert_array_equal(full.S, direct.S)
    assert_array_equal(full.case_weights, direct.case_weights)


def test_gse_with_missing_cells(fast_cfg):
    gen = np.random.default_rng(21)
    Z = gen.standard_normal((2000, 3))
    U = np.ones(Z.shape, dtype=bool)
    U[gen.choice(2000, size=100, replace=False), 1] = False
    Z[~U] = np.nan
    est = gse(Z, U, fast_cfg, seed=8)
    assert est.converged
    assert np.max(np.abs(est.m)) < 0.1
    assert np.max(np.abs(est.S - np.eye(3))) < 0.15
    assert_array_equal(est.observed[~U[:, 1]], 2)
    c = fast_cfg.constants_for(est.observed)
    assert abs(scale_residual(est.case_distances, c, 1.0)) < 1e-8


def test_gse_is_deterministic(rng, fast_cfg):
    Z = rng.standard_normal((200, 3))
    U = rng.random(Z.shape) > 0.05
    U[:, 2] = True
    a = gse(Z, U, fast_cfg, seed=12)
    b = gse(Z, U, fast_cfg, seed=12)
    assert_array_equal(a.m, b.m)
    assert_array_equal(a.S, b.S)


def test_gse_pairwise_start_when_few_complete_cases(rng, fast_cfg, caplog):
    Z = rng.standard_normal((300, 3))
    U = rng.random(Z.shape) > 0.35
    U[:, 2] = True
    with caplog.at_level("INFO", logger="robust3s.scatter"):
        est = gse(Z, U, fast_cfg, seed=1)
    assert "pairwise initial estimate" in caplog.text
    assert np.linalg.eigvalsh(est.S).min() > 0


def test_gse_single_observed_column():
    Z = np.random.default_rng(0).standard_normal((50, 3))
    U = np.zeros(Z.shape, dtype=bool)
    U[:, 0] = True
    with pytest.raises(DegenerateDesignError, match="degenerate design"):
        gse(Z, U)


def test_pairwise_initial_is_positive_definite(rng):
    Z = rng.multivariate_normal([1.0, -1.0, 0.0], [[1, 0.5, 0], [0.5, 1, 0.3], [0, 0.3, 1]], size=400)
    U = rng.random(Z.shape) > 0.1
    m0, S0 = pairwise_initial(Z, U)
    assert_allclose(m0, [1.0, -1.0, 0.0], atol=0.2)
    assert np.linalg.eigvalsh(S0).min() > 0
    assert_allclose(S0, S0.T)


def test_scatter_config_constants():
    cfg = ScatterConfig()
    table = cfg.consistency_constants(4)
    assert sorted(table) == [1, 2, 3, 4]
    assert_allclose(cfg.constants_for(np.array([1, 4, 4])), [table[1], table[4], table[4]])
