"""
Imputación por mejor predicción lineal de las celdas filtradas.
"""
from __future__ import annotations

import logging

import numpy as np

from ..scatter.distances import check_condition, observation_patterns

LOGGER = logging.getLogger(__name__)


def impute_blp(X, U, m, S) -> np.ndarray:
    """
    Sustituye las celdas con U = 0 por m_mis + S_mis,obs S_obs,obs^{-1} (x_obs - m_obs).
    Si (m, S) incluyen la respuesta como última coordenada se usa solo el bloque de covariables.
    Una fila sin celdas observadas se imputa con m.
    """
    X = np.asarray(X, dtype=float)
    U = np.asarray(U, dtype=bool)
    m = np.asarray(m, dtype=float)
    S = np.asarray(S, dtype=float)
    n, p = X.shape
    if m.shape[0] == p + 1:
        m, S = m[:p], S[:p, :p]

    X_hat = X.copy()
    if U.all():
        return X_hat
    patterns, inverse = observation_patterns(U)
    for g, obs in enumerate(patterns):
        if obs.all():
            continue
        rows = inverse == g
        mis = ~obs
        if not obs.any():
            LOGGER.warning("%d fully filtered rows imputed by the location", int(rows.sum()))
            X_hat[np.ix_(rows, mis)] = m[mis]
            continue
        S_oo = S[np.ix_(obs, obs)]
        check_condition(S_oo, "observed covariate block")
        diff = X[np.ix_(rows, obs)] - m[obs]
        coef = np.linalg.solve(S_oo, S[np.ix_(obs, mis)])
        X_hat[np.ix_(rows, mis)] = m[mis] + diff @ coef
    return X_hat


def imputed_design(fit, X) -> np.ndarray:
    """X con las celdas filtradas por el ajuste imputadas con su (m, S); X si no hubo filtro."""
    flags = fit.covariate_flags
    if flags is None or fit.scatter is None:
        return np.asarray(X, dtype=float).copy()
    return impute_blp(X, flags, fit.scatter.m, fit.scatter.S)
