"""
Distancias de Mahalanobis parciales y esperanza condicional de las celdas no observadas.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError, SingularMatrixError

# Número de condición a partir del cual una matriz se considera singular
MAX_CONDITION = 1e12


def check_condition(A: np.ndarray, what: str) -> float:
    """Devuelve cond(A) o lanza SingularMatrixError."""
    try:
        cond = float(np.linalg.cond(A))
    except np.linalg.LinAlgError:
        cond = float("inf")
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularMatrixError(what, cond)
    return cond


def partial_mahalanobis(z, u, m, S) -> tuple[float, int]:
    """
    Distancia cuadrática del subvector observado bajo los sub-bloques de (m, S).
    Las coordenadas con u = 0 se ignoran.
    """
    z = np.asarray(z, dtype=float)
    obs = np.asarray(u).astype(bool)
    k = int(obs.sum())
    if k == 0:
        raise DataError("no observed coordinates")
    m = np.asarray(m, dtype=float)
    S = np.asarray(S, dtype=float)
    block = S[np.ix_(obs, obs)]
    check_condition(block, "observed scatter block")
    diff = z[obs] - m[obs]
    return float(diff @ np.linalg.solve(block, diff)), k


@dataclass(frozen=True)
class ConditionalFill:
    """
    z_hat: datos con las celdas no observadas sustituidas por su media condicional.
    distances: distancias parciales; observed: k_i por caso.
    pattern_index: patrón de observación de cada caso; cond_covs: covarianza condicional por patrón
    (ceros en el bloque observado).
    """
    z_hat: np.ndarray
    distances: np.ndarray
    observed: np.ndarray
    pattern_index: np.ndarray
    cond_covs: np.ndarray


def observation_patterns(U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Patrones distintos de U y el índice de patrón de cada fila."""
    patterns, inverse = np.unique(np.asarray(U, dtype=bool), axis=0, return_inverse=True)
    return patterns, inverse.reshape(-1)


def conditional_fill(Z, U, m, S) -> ConditionalFill:
    """
    Usa la precisión P = S^{-1}: la media condicional del bloque faltante es
    m_M - P_MM^{-1} P_MO (z_O - m_O), su covarianza P_MM^{-1}, y (z_hat - m)' P (z_hat - m)
    coincide con la distancia del bloque observado.
    """
    Z = np.asarray(Z, dtype=float)
    U = np.asarray(U, dtype=bool)
    m = np.asarray(m, dtype=float)
    S = np.asarray(S, dtype=float)
    n, q = Z.shape

    check_condition(S, "scatter matrix")
    P = np.linalg.inv(S)
    P = 0.5 * (P + P.T)

    patterns, inverse = observation_patterns(U)
    z_hat = np.where(U, Z, 0.0)
    cond_covs = np.zeros((patterns.shape[0], q, q))
    for g, pat in enumerate(patterns):
        if not pat.any():
            raise DataError("a case has no observed coordinates")
        if pat.all():
            continue
        rows = inverse == g
        mis = ~pat
        P_mm = P[np.ix_(mis, mis)]
        P_mo = P[np.ix_(mis, pat)]
        diff_o = Z[np.ix_(rows, pat)] - m[pat]
        fill = m[mis] - np.linalg.solve(P_mm, P_mo @ diff_o.T).T
        z_hat[np.ix_(rows, mis)] = fill
        cond_covs[g][np.ix_(mis, mis)] = np.linalg.inv(P_mm)

    diff = z_hat - m
    d = np.einsum("ij,jk,ik->i", diff, P, diff)
    return ConditionalFill(
        z_hat=z_hat,
        distances=np.maximum(d, 0.0),
        observed=U.sum(axis=1),
        pattern_index=inverse,
        cond_covs=cond_covs,
    )


def mahalanobis(Z, m, S) -> np.ndarray:
    """Distancias cuadráticas de casos completos."""
    Z = np.asarray(Z, dtype=float)
    cond = check_condition(S, "scatter matrix")
    try:
        L = np.linalg.cholesky(S)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("scatter matrix", cond) from exc
    sol = np.linalg.solve(L, (Z - m).T)
    return np.einsum("ij,ij->j", sol, sol)
