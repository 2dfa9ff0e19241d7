"""
Inferencia asintótica: covarianza sándwich C^{-1} D C^{-1} estimada por sustitución,
intervalos de confianza normales y p-valores.
"""
from __future__ import annotations

import numpy as np
from scipy import stats

from ..scatter import RhoFunction, consistency_constant, mahalanobis
from ..scatter.distances import check_condition
from .imputation import impute_blp
from .model import DEFAULT_TAU


def _sandwich(Xt: np.ndarray, bread_weights: np.ndarray, meat_weights: np.ndarray) -> np.ndarray:
    n = Xt.shape[0]
    C = (Xt.T * bread_weights) @ Xt / n
    D = (Xt.T * meat_weights) @ Xt / n
    check_condition(C, "ASV matrix C")
    C_inv = np.linalg.inv(C)
    asv = C_inv @ D @ C_inv
    return 0.5 * (asv + asv.T)


def asv_estimate(coefficients, sigma_eps: float, X, y, U, m, S, *, b: float = 0.5) -> np.ndarray:
    """
    ASV de (alpha, beta) para 3S/2S. X se completa por mejor predicción lineal, las distancias usan
    Z_hat = (X_hat, y) bajo (m, S), w(d) = rho_B'(d / c) y w'(d) = rho_B''(d / c) / c con c = c_{p+1}.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    theta = np.asarray(coefficients, dtype=float)
    n, p = X.shape
    U = np.ones((n, p), dtype=bool) if U is None else np.asarray(U, dtype=bool)[:, :p]

    X_hat = impute_blp(X, U, m, S)
    Z_hat = np.column_stack([X_hat, y])
    d = mahalanobis(Z_hat, np.asarray(m, dtype=float), np.asarray(S, dtype=float))
    rho = RhoFunction()
    c = consistency_constant(p + 1, b, rho.kind)
    w = rho.drho(d / c)
    w_prime = rho.d2rho(d / c) / c

    Xt = np.column_stack([np.ones(n), X_hat])
    r = y - Xt @ theta
    r2 = r * r
    bread = w + 2.0 / sigma_eps**2 * w_prime * r2
    return _sandwich(Xt, bread, w * w * r2)


def ls_asv(X, residuals) -> tuple[np.ndarray, float]:
    """Covarianza clásica n sigma^2 (X~'X~)^{-1} con sigma^2 = RSS / (n - p - 1)."""
    X = np.asarray(X, dtype=float)
    n, p = X.shape
    Xt = np.column_stack([np.ones(n), X])
    gram = Xt.T @ Xt
    check_condition(gram, "design matrix")
    dof = n - p - 1
    sigma2 = float(residuals @ residuals) / dof if dof > 0 else 0.0
    asv = n * sigma2 * np.linalg.inv(gram)
    return 0.5 * (asv + asv.T), sigma2


def confidence_intervals(coefficients, asv, n: int, tau: float = DEFAULT_TAU):
    """
    Devuelve (ci, p_values, std_errors): ci_j = coef_j -/+ Phi^{-1}(1 - tau/2) sqrt(asv_jj / n),
    p_j = 2 (1 - Phi(|coef_j| / se_j)).
    """
    if not 0.0 < tau < 1.0:
        raise ValueError(f"tau must lie in (0, 1), got {tau}")
    coef = np.asarray(coefficients, dtype=float)
    se = np.sqrt(np.maximum(np.diag(asv), 0.0) / n)
    z = stats.norm.ppf(1.0 - tau / 2.0)
    ci = np.column_stack([coef - z * se, coef + z * se])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(se > 0, np.abs(coef) / se, np.where(coef == 0, 0.0, np.inf))
    p_values = np.clip(2.0 * stats.norm.sf(ratio), 0.0, 1.0)
    return ci, p_values, se
