"""
Procesos generadores: correlación aleatoria con número de condición fijo, coeficientes en la
esfera de radio R, covariables normales o con marginales no normales y diseño mixto.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..errors import NumericalError
from .model import CovariateModel, Dataset, ScenarioConfig

LOGGER = logging.getLogger(__name__)

# Marginales de las covariables no normales, en bloques de tres columnas
MARGINALS = (
    stats.norm(),
    stats.chi2(20),
    stats.f(90, 10),
    stats.chi2(1),
    stats.pareto(3),
)
_COND_RTOL = 1e-10
_MAX_SPREAD = 1e12


def _correlation_from_spread(Q: np.ndarray, spread: float) -> np.ndarray:
    p = Q.shape[0]
    eig = np.geomspace(1.0, 1.0 / spread, p)
    A = (Q * eig) @ Q.T
    scale = np.sqrt(np.diag(A))
    R = A / np.outer(scale, scale)
    R = 0.5 * (R + R.T)
    np.fill_diagonal(R, 1.0)
    return R


def random_correlation(p: int, condition_number: float = 100.0, seed=None) -> np.ndarray:
    """
    Base ortogonal aleatoria, autovalores log-espaciados con cociente r, reescalado a diagonal unidad;
    r se ajusta por bisección en log(r) hasta que cond2 coincide con el objetivo.
    """
    if p < 2 or condition_number <= 1.0:
        raise ValueError("need p >= 2 and condition_number > 1")
    rng = np.random.default_rng(seed)
    Q = stats.ortho_group.rvs(p, random_state=rng)

    def cond(log_spread: float) -> float:
        return float(np.linalg.cond(_correlation_from_spread(Q, math.exp(log_spread))))

    lo, hi = 0.0, math.log(condition_number)
    while cond(hi) < condition_number:
        hi += math.log(10.0)
        if hi > math.log(_MAX_SPREAD):
            raise NumericalError("condition number target not reachable")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if cond(mid) < condition_number:
            lo = mid
        else:
            hi = mid
        if hi - lo < _COND_RTOL:
            break
    LOGGER.debug("random correlation p=%d: eigenvalue spread %.6g for condition number %g", p, math.exp(hi), condition_number)
    return _correlation_from_spread(Q, math.exp(hi))


def random_beta(p: int, R: float = 10.0, seed=None) -> np.ndarray:
    """beta = R b con b uniforme en la esfera unidad."""
    rng = np.random.default_rng(seed)
    b = rng.standard_normal(p)
    while not np.any(b):
        b = rng.standard_normal(p)
    return R * b / np.linalg.norm(b)


def marginal(j: int):
    """Distribución de la columna j en el modelo no normal."""
    return MARGINALS[(j // 3) % len(MARGINALS)]


def to_marginals(Z: np.ndarray) -> np.ndarray:
    """X_ij = G_j^{-1}(Phi(Z_ij)); para Z > 0 se usa la cola superior para no saturar en 1."""
    X = np.empty_like(Z)
    for j in range(Z.shape[1]):
        G = marginal(j)
        z = Z[:, j]
        X[:, j] = np.where(z > 0, G.isf(stats.norm.sf(z)), G.ppf(stats.norm.cdf(z)))
    return X


@dataclass(frozen=True, eq=False)
class ModelStats:
    """Valores de los outliers por celda y media de la respuesta limpia."""
    x_mean: np.ndarray
    x_outlier_unit: np.ndarray
    y_mean: float
    outliers_scale_with_sd: bool = True

    def cell_outliers(self, k: float) -> np.ndarray:
        """E(X_j) + k SD(X_j) (normal) o k G_j^{-1}(0.999) (no normal)."""
        if self.outliers_scale_with_sd:
            return self.x_mean + k * self.x_outlier_unit
        return k * self.x_outlier_unit


def model_stats(cfg: ScenarioConfig, beta: np.ndarray) -> ModelStats:
    p = cfg.p
    beta_x = beta[:p]
    if cfg.covariate_model == CovariateModel.NORMAL:
        mean = np.zeros(p)
        y_mean = 0.0
        if cfg.mixed:
            y_mean = float(np.asarray(cfg.dummy_thresholds[: cfg.p_d]) @ beta[p:])
        return ModelStats(x_mean=mean, x_outlier_unit=np.ones(p), y_mean=y_mean)
    mean = np.array([marginal(j).mean() for j in range(p)])
    q999 = np.array([marginal(j).ppf(0.999) for j in range(p)])
    return ModelStats(x_mean=mean, x_outlier_unit=q999, y_mean=float(mean @ beta_x), outliers_scale_with_sd=False)


def _latent(n: int, Sigma: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    L = np.linalg.cholesky(Sigma)
    return rng.standard_normal((n, Sigma.shape[0])) @ L.T


def dichotomize(D_latent, thresholds) -> np.ndarray:
    """D_ij = 1 si el valor latente es <= Phi^{-1}(pi_j)."""
    D_latent = np.asarray(D_latent, dtype=float)
    cut = stats.norm.ppf(np.asarray(thresholds, dtype=float))
    return (D_latent <= cut).astype(float)


def gen_clean(cfg: ScenarioConfig, seed=None) -> Dataset:
    """Y = X beta + e, e ~ N(0, sigma^2); X normal con correlación aleatoria o con marginales no normales."""
    rng = np.random.default_rng(seed)
    if cfg.mixed:
        return gen_mixed(cfg, rng)
    Sigma = random_correlation(cfg.p, cfg.condition_number, rng)
    beta = random_beta(cfg.p, cfg.beta_radius, rng)
    X = _latent(cfg.n, Sigma, rng)
    if cfg.covariate_model == CovariateModel.NONNORMAL:
        X = to_marginals(X)
    y = X @ beta + cfg.sigma_eps * rng.standard_normal(cfg.n)
    return Dataset(X=X, y=y, beta=beta, Sigma=Sigma)


def gen_mixed(cfg: ScenarioConfig, seed=None) -> Dataset:
    """p covariables continuas y p_d dicotómicas a partir de una normal latente común."""
    rng = np.random.default_rng(seed)
    total = cfg.p + cfg.p_d
    Sigma = random_correlation(total, cfg.condition_number, rng)
    beta = random_beta(total, cfg.beta_radius, rng)
    latent = _latent(cfg.n, Sigma, rng)
    X = latent[:, : cfg.p]
    if cfg.covariate_model == CovariateModel.NONNORMAL:
        X = to_marginals(X)
    D = dichotomize(latent[:, cfg.p :], cfg.dummy_thresholds[: cfg.p_d])
    y = X @ beta[: cfg.p] + D @ beta[cfg.p :] + cfg.sigma_eps * rng.standard_normal(cfg.n)
    return Dataset(X=X, y=y, beta=beta, Sigma=Sigma, D=D)
