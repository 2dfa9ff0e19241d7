"""
Ajustes 3S, 2S y mínimos cuadrados.
3S: filtro por celdas sobre X, GSE sobre (X, y) y coeficientes por sustitución.
2S: igual sin filtro. LS: momentos empíricos y covarianza clásica.
"""
from __future__ import annotations

import logging

import numpy as np

from ..errors import DataError, DegenerateDesignError, NonFiniteError
from ..filtering import DEFAULT_ALPHA, DEFAULT_XI, FilterReport, filter_matrix
from ..scatter import ScatterConfig, gse
from .inference import asv_estimate, confidence_intervals, ls_asv
from .model import DEFAULT_TAU, Method, RegressionFit
from .plugin import partition_moments, plug_in_coefficients, residual_scale

LOGGER = logging.getLogger(__name__)


def check_xy(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Valida forma y finitud; devuelve copias en float."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise DataError(f"incompatible shapes X {X.shape} and y {y.shape}")
    if X.shape[0] == 0:
        raise DataError("empty sample")
    bad = np.argwhere(~np.isfinite(X))
    if bad.size:
        raise NonFiniteError(int(bad[0][0]), int(bad[0][1]))
    bad_y = np.flatnonzero(~np.isfinite(y))
    if bad_y.size:
        raise NonFiniteError(int(bad_y[0]), "response")
    return X, y


def _robust_fit(
    X: np.ndarray,
    y: np.ndarray,
    U_x: np.ndarray,
    cfg: ScatterConfig,
    tau: float,
    seed,
    method: Method,
    report: FilterReport | None,
) -> RegressionFit:
    n, p = X.shape
    if n <= 2 * (p + 1):
        raise DegenerateDesignError(f"need more than {2 * (p + 1)} cases, got {n}")
    Z = np.column_stack([X, y])
    U = np.column_stack([U_x, np.ones(n, dtype=bool)])
    location_scatter = gse(Z, U, cfg, seed)
    LOGGER.debug("%s fit: n=%d, p=%d, GSE converged=%s", method.value, n, p, location_scatter.converged)

    moments = partition_moments(location_scatter)
    alpha, beta = plug_in_coefficients(moments)
    sigma_eps = residual_scale(moments, beta)
    coefficients = np.concatenate([[alpha], beta])
    asv = asv_estimate(coefficients, sigma_eps, X, y, U_x, location_scatter.m, location_scatter.S, b=cfg.b)
    ci, p_values, _ = confidence_intervals(coefficients, asv, n, tau)
    return RegressionFit(
        alpha=alpha,
        beta=beta,
        sigma_eps=sigma_eps,
        asv=asv,
        ci=ci,
        p_values=p_values,
        method=method,
        n=n,
        tau=tau,
        scatter=location_scatter,
        filter_report=report,
    )


def fit_3s(
    X,
    y,
    alpha_filter: float = DEFAULT_ALPHA,
    xi: float = DEFAULT_XI,
    cfg: ScatterConfig | None = None,
    tau: float = DEFAULT_TAU,
    seed=None,
    *,
    names=None,
) -> RegressionFit:
    """Regresión 3S. La respuesta nunca se filtra."""
    X, y = check_xy(X, y)
    report = filter_matrix(X, alpha_filter, xi, names=names)
    return _robust_fit(X, y, report.effective_flags, cfg or ScatterConfig(), tau, seed, Method.THREE_S, report)


def fit_2s(X, y, cfg: ScatterConfig | None = None, tau: float = DEFAULT_TAU, seed=None) -> RegressionFit:
    """Regresión 2S: estimador S sobre (X, y) sin filtro."""
    X, y = check_xy(X, y)
    U_x = np.ones(X.shape, dtype=bool)
    return _robust_fit(X, y, U_x, cfg or ScatterConfig(), tau, seed, Method.TWO_S, None)


def fit_ls(X, y, tau: float = DEFAULT_TAU) -> RegressionFit:
    """Mínimos cuadrados por sustitución de momentos empíricos."""
    X, y = check_xy(X, y)
    n, p = X.shape
    if n <= p + 1:
        raise DegenerateDesignError(f"need more than {p + 1} cases, got {n}")
    Z = np.column_stack([X, y])
    moments = partition_moments(m=Z.mean(axis=0), S=np.cov(Z, rowvar=False).reshape(p + 1, p + 1))
    alpha, beta = plug_in_coefficients(moments)
    residuals = y - alpha - X @ beta
    asv, sigma2 = ls_asv(X, residuals)
    coefficients = np.concatenate([[alpha], beta])
    ci, p_values, _ = confidence_intervals(coefficients, asv, n, tau)
    return RegressionFit(
        alpha=alpha,
        beta=beta,
        sigma_eps=float(np.sqrt(sigma2)),
        asv=asv,
        ci=ci,
        p_values=p_values,
        method=Method.LS,
        n=n,
        tau=tau,
    )


def fit_method(
    method: Method | str,
    X,
    y,
    *,
    alpha_filter: float = DEFAULT_ALPHA,
    xi: float = DEFAULT_XI,
    cfg: ScatterConfig | None = None,
    tau: float = DEFAULT_TAU,
    seed=None,
    names=None,
) -> RegressionFit:
    method = method if isinstance(method, Method) else Method.parse(method)
    if method == Method.THREE_S:
        return fit_3s(X, y, alpha_filter, xi, cfg, tau, seed, names=names)
    if method == Method.TWO_S:
        return fit_2s(X, y, cfg, tau, seed)
    return fit_ls(X, y, tau)
