"""
Métricas por réplica: error cuadrático medio, cobertura y longitud media de los intervalos.
Todas se promedian sobre las pendientes.
"""
from __future__ import annotations

import numpy as np


def mse(beta_hat, beta) -> float:
    diff = np.asarray(beta_hat, dtype=float) - np.asarray(beta, dtype=float)
    return float(np.mean(diff * diff))


def coverage(ci, beta) -> float:
    ci = np.asarray(ci, dtype=float)
    beta = np.asarray(beta, dtype=float)
    return float(np.mean((ci[:, 0] <= beta) & (beta <= ci[:, 1])))


def ci_length(ci) -> float:
    ci = np.asarray(ci, dtype=float)
    return float(np.mean(ci[:, 1] - ci[:, 0]))
