"""
Mecanismos de contaminación: celdas independientes (número fijo de celdas) y casos completos
de apalancamiento en la dirección del menor autovalor.
"""
from __future__ import annotations

import math

import numpy as np

from .design import ModelStats


def contaminate_cellwise(X, y, epsilon: float, k: float, model_stats: ModelStats, seed=None, *, sigma_eps: float = 0.5):
    """
    floor(eps n p) celdas de X, uniformes sin reemplazo, pasan a su valor de outlier; de forma independiente
    floor(eps n) respuestas pasan a E(Y) + k SD(e). Devuelve copias (X', y').
    """
    rng = np.random.default_rng(seed)
    X = np.array(X, dtype=float, copy=True)
    y = np.array(y, dtype=float, copy=True)
    n, p = X.shape
    n_cells = math.floor(epsilon * n * p + 1e-9)
    n_resp = math.floor(epsilon * n + 1e-9)
    if n_cells:
        flat = rng.choice(n * p, size=n_cells, replace=False)
        rows, cols = np.unravel_index(flat, (n, p))
        X[rows, cols] = model_stats.cell_outliers(k)[cols]
    if n_resp:
        idx = rng.choice(n, size=n_resp, replace=False)
        y[idx] = model_stats.y_mean + k * sigma_eps
    return X, y


def leverage_direction(Sigma) -> np.ndarray:
    """Autovector del menor autovalor, escalado para que v' Sigma^{-1} v = 1."""
    vals, vecs = np.linalg.eigh(np.asarray(Sigma, dtype=float))
    return vecs[:, 0] * math.sqrt(vals[0])


def contaminate_casewise(X, y, epsilon: float, k: float, c: float, Sigma, beta, sigma_eps: float, seed=None, *, offset=None):
    """
    floor(eps n) casos pasan a X_i = c v e Y_i = (c v)' beta + offset_i + e_i con e_i ~ N(k, sigma^2).
    offset permite añadir D_i' beta_d en el diseño mixto (Sigma y beta son entonces los de X).
    """
    rng = np.random.default_rng(seed)
    X = np.array(X, dtype=float, copy=True)
    y = np.array(y, dtype=float, copy=True)
    n = X.shape[0]
    n_cases = math.floor(epsilon * n + 1e-9)
    if n_cases == 0:
        return X, y
    idx = rng.choice(n, size=n_cases, replace=False)
    x_out = c * leverage_direction(Sigma)
    X[idx] = x_out
    shift = 0.0 if offset is None else np.asarray(offset, dtype=float)[idx]
    y[idx] = float(x_out @ np.asarray(beta, dtype=float)) + shift + rng.normal(k, sigma_eps, size=n_cases)
    return X, y
