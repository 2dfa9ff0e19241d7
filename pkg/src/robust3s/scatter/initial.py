"""
Estimador inicial por pares para datos con celdas filtradas: mediana y MAD por coordenada,
correlaciones por pares con pesos bisquare y recorte de autovalores.
"""
from __future__ import annotations

import logging

import numpy as np

from ..errors import DegenerateDesignError

LOGGER = logging.getLogger(__name__)

MAD_NORMAL = 1.4826
BISQUARE_TUNING = 4.685
_MIN_PAIR = 3
_EIGEN_FLOOR = 1e-6


def bisquare_weights(u: np.ndarray, tuning: float = BISQUARE_TUNING) -> np.ndarray:
    """(1 - (u/c)^2)^2 dentro de |u| < c, 0 fuera."""
    r = u / tuning
    return np.where(np.abs(r) < 1.0, (1.0 - r * r) ** 2, 0.0)


def pairwise_initial(Z, U) -> tuple[np.ndarray, np.ndarray]:
    """Devuelve (m0, S0) definida positiva a partir de las celdas observadas."""
    Z = np.asarray(Z, dtype=float)
    U = np.asarray(U, dtype=bool)
    n, q = Z.shape

    center = np.empty(q)
    spread = np.empty(q)
    for j in range(q):
        col = Z[U[:, j], j]
        if col.size < _MIN_PAIR:
            raise DegenerateDesignError(f"column {j} has fewer than {_MIN_PAIR} observed values")
        center[j] = np.median(col)
        spread[j] = MAD_NORMAL * np.median(np.abs(col - center[j]))
        if spread[j] <= 0.0:
            raise DegenerateDesignError(f"column {j} has zero MAD")

    std = np.where(U, (Z - center) / spread, 0.0)
    w = np.where(U, bisquare_weights(std), 0.0)

    R = np.eye(q)
    for i in range(q):
        for j in range(i + 1, q):
            both = U[:, i] & U[:, j]
            if np.count_nonzero(both) < _MIN_PAIR:
                raise DegenerateDesignError(f"columns {i} and {j} are never observed together")
            wij = w[both, i] * w[both, j]
            xi, xj = std[both, i], std[both, j]
            denom = np.sqrt(np.sum(wij * xi * xi) * np.sum(wij * xj * xj))
            if denom <= 0.0:
                raise DegenerateDesignError(f"no weighted support for columns {i} and {j}")
            R[i, j] = R[j, i] = np.clip(np.sum(wij * xi * xj) / denom, -1.0, 1.0)

    vals, vecs = np.linalg.eigh(R)
    floor = _EIGEN_FLOOR * max(float(vals.max()), 1.0)
    clipped = (vecs * np.maximum(vals, floor)) @ vecs.T
    scale = np.sqrt(np.diag(clipped))
    clipped = clipped / np.outer(scale, scale)
    S0 = clipped * np.outer(spread, spread)
    LOGGER.debug("pairwise initial estimate: min eigenvalue of correlation %.3g", float(vals.min()))
    return center, 0.5 * (S0 + S0.T)
