"""
Regresión M sin intercepto con la función rho de Huber truncada (esquina en sqrt(2) s),
resuelta por IRLS con statsmodels y escala fija en el MAD de los residuos LS iniciales.
"""
from __future__ import annotations

import logging
import math

import numpy as np
import pandas as pd
import statsmodels.api as sm

from ..errors import DataError, DegenerateDesignError
from .model import MRegression

LOGGER = logging.getLogger(__name__)

HUBER_CORNER = math.sqrt(2.0)
_EXACT_FIT = 1e-12


def _check_rank(D: np.ndarray) -> None:
    if D.shape[0] < D.shape[1] or np.linalg.matrix_rank(D) < D.shape[1]:
        raise DegenerateDesignError("dummy design matrix is rank deficient")


def m_regression_fit(D, y, *, maxiter: int = 100, tol: float = 1e-8) -> MRegression:
    """Ajuste M completo; si los residuos LS tienen escala nula devuelve la solución LS."""
    D = np.asarray(D, dtype=float)
    y = np.asarray(y, dtype=float)
    if D.ndim == 1:
        D = D[:, None]
    if D.shape[0] != y.shape[0]:
        raise DataError(f"incompatible shapes D {D.shape} and y {y.shape}")
    if D.shape[1] == 0:
        return MRegression(coef=np.zeros(0), weights=np.ones(y.shape[0]), scale=0.0, iterations=0)
    _check_rank(D)

    ls_coef = np.linalg.lstsq(D, y, rcond=None)[0]
    residuals = y - D @ ls_coef
    scale = float(sm.robust.scale.mad(residuals, center=0.0))
    if scale <= _EXACT_FIT * max(1.0, float(np.max(np.abs(y)))):
        LOGGER.debug("exact fit in M-regression; least squares coefficients kept")
        return MRegression(coef=ls_coef, weights=np.ones(y.shape[0]), scale=scale, iterations=0)

    model = sm.RLM(y, D, M=sm.robust.norms.HuberT(t=HUBER_CORNER))
    result = model.fit(maxiter=maxiter, tol=tol, scale_est="mad", update_scale=False, conv="coefs")
    iterations = int(result.fit_history["iteration"]) if "iteration" in result.fit_history else maxiter
    return MRegression(
        coef=np.asarray(result.params, dtype=float),
        weights=np.asarray(result.weights, dtype=float),
        scale=float(result.scale),
        iterations=iterations,
    )


def m_regression(D, y) -> np.ndarray:
    """Coeficientes del ajuste M sin intercepto."""
    return m_regression_fit(D, y).coef


def initial_sweep(X, D, y):
    """
    Elimina el efecto de D: Y_bar = y - D t, X_bar = X - D T con t = M(D, y) y T_j = M(D, X_j).
    Devuelve (X_bar, Y_bar, t, T).
    """
    X = np.asarray(X, dtype=float)
    D = np.asarray(D, dtype=float)
    y = np.asarray(y, dtype=float)
    t = m_regression(D, y)
    T = np.column_stack([m_regression(D, X[:, j]) for j in range(X.shape[1])]) if X.shape[1] else np.zeros((D.shape[1], 0))
    return X - D @ T, y - D @ t, t, T


def detect_dummy_columns(frame: pd.DataFrame, exclude=()) -> list[str]:
    """Columnas con a lo sumo dos valores distintos."""
    return [col for col in frame.columns if col not in exclude and frame[col].nunique(dropna=True) <= 2]
