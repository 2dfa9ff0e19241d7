"""
Algoritmo alternante: regresión 3S (o 2S) para las covariables continuas y regresión M
para las dicotómicas, con estimación inicial tras barrer el efecto de D.
"""
from __future__ import annotations

import logging

import numpy as np

from ..errors import DataError
from ..regression import RegressionFit, fit_method, imputed_design
from .mest import initial_sweep, m_regression
from .model import MixedFit, MixedOptions

LOGGER = logging.getLogger(__name__)


def _continuous_step(X, y, options: MixedOptions) -> RegressionFit:
    return fit_method(
        options.method,
        X,
        y,
        alpha_filter=options.alpha_filter,
        xi=options.xi,
        cfg=options.cfg,
        tau=options.tau,
        seed=options.seed,
    )


def alternating_fit(X, D, y, options: MixedOptions | None = None) -> MixedFit:
    """
    (alpha, beta_x) = g(X, y - D beta_d) y beta_d = M(D, y - alpha - X_hat beta_x) hasta convergencia
    o options.max_iter iteraciones. Sin covariables dicotómicas devuelve el ajuste continuo.
    """
    options = options or MixedOptions()
    X = np.asarray(X, dtype=float)
    D = np.asarray(D, dtype=float)
    y = np.asarray(y, dtype=float)
    if D.ndim == 1:
        D = D[:, None]
    if X.shape[0] != D.shape[0] or X.shape[0] != y.shape[0]:
        raise DataError(f"incompatible shapes X {X.shape}, D {D.shape}, y {y.shape}")

    if D.shape[1] == 0:
        fit = _continuous_step(X, y, options)
        return MixedFit(fit.alpha, fit.beta, np.zeros(0), 0, True, fit)

    X_bar, y_bar, _, T = initial_sweep(X, D, y)
    fit = _continuous_step(X_bar, y_bar, options)
    # la imputación inicial se hace en el espacio barrido y se deshace el barrido
    X_hat = imputed_design(fit, X_bar) + D @ T
    beta_d = m_regression(D, y - fit.alpha - X_hat @ fit.beta)
    current = np.concatenate([[fit.alpha], fit.beta, beta_d])

    converged = False
    iterations = 0
    for iterations in range(1, options.max_iter + 1):
        fit = _continuous_step(X, y - D @ beta_d, options)
        X_hat = imputed_design(fit, X)
        beta_d = m_regression(D, y - fit.alpha - X_hat @ fit.beta)
        updated = np.concatenate([[fit.alpha], fit.beta, beta_d])
        change = float(np.max(np.abs(updated - current)))
        current = updated
        LOGGER.debug("alternating iteration %d: max change %.3g", iterations, change)
        if change < options.tol:
            converged = True
            break
    if not converged:
        LOGGER.warning("alternating fit did not converge in %d iterations", iterations)
    return MixedFit(
        alpha=fit.alpha,
        beta_x=fit.beta,
        beta_d=beta_d,
        iterations=iterations,
        converged=converged,
        inner_fit=fit,
    )
