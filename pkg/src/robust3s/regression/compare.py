"""
Comparación de estimadores sobre un mismo conjunto de datos.
"""
from __future__ import annotations

import numpy as np
from scipy import stats


def pairwise_distances(fits: dict, X) -> tuple[list[str], np.ndarray]:
    """
    Distancia cuadrática n * sum_j (beta_jA - beta_jB)^2 * MAD(X_j)^2 entre cada par de ajustes.
    Devuelve los nombres en orden y la matriz simétrica.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    mad2 = stats.median_abs_deviation(X, axis=0) ** 2
    names = list(fits)
    out = np.zeros((len(names), len(names)))
    for a, name_a in enumerate(names):
        for b in range(a + 1, len(names)):
            delta = np.asarray(fits[name_a].beta) - np.asarray(fits[names[b]].beta)
            out[a, b] = out[b, a] = n * float(np.sum(delta * delta * mad2))
    return names, out
