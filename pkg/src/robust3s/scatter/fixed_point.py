"""
Iteración de punto fijo compartida por el estimador S y el GSE.
Cada paso: distancias (parciales) bajo la forma Sigma con det 1, escala S generalizada,
pesos rho'(d / (c_k s)) y actualización ponderada de (m, Sigma) con la covarianza condicional
de las celdas no observadas.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateDesignError
from .distances import conditional_fill, mahalanobis
from .model import LocationScatter, ScatterConfig
from .scale import gs_scale

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Candidate:
    m: np.ndarray
    shape: np.ndarray
    scale: float


def normalize_shape(C: np.ndarray) -> np.ndarray:
    """Lleva C a determinante 1; lanza DegenerateDesignError si no es definida positiva."""
    C = 0.5 * (C + C.T)
    sign, logdet = np.linalg.slogdet(C)
    if sign <= 0 or not np.isfinite(logdet):
        raise DegenerateDesignError("scatter update is not positive definite")
    return C / np.exp(logdet / C.shape[0])


def _distances(Z, U, m, shape):
    if U is None:
        return Z, mahalanobis(Z, m, shape), None
    fill = conditional_fill(Z, U, m, shape)
    return fill.z_hat, fill.distances, fill


def weighted_step(Z, U, c, m, shape, cfg: ScatterConfig) -> Candidate:
    """Un paso de reponderación a partir de (m, Sigma); devuelve la escala del punto de partida."""
    z_hat, d, fill = _distances(Z, U, m, shape)
    s = gs_scale(d, c, cfg.b, cfg.rho)
    w = cfg.rho.drho(d / (c * s))
    total = float(w.sum())
    if total <= 0.0:
        raise DegenerateDesignError("all case weights vanished")

    m_new = (w @ z_hat) / total
    diff = z_hat - m_new
    C = (diff.T * w) @ diff / total
    if fill is not None:
        pattern_weights = np.bincount(fill.pattern_index, weights=w, minlength=fill.cond_covs.shape[0])
        C = C + s * np.einsum("g,gij->ij", pattern_weights, fill.cond_covs) / total
    return Candidate(m=m_new, shape=normalize_shape(C), scale=s)


def _small_change(old: Candidate, new: Candidate, tol: float) -> bool:
    spread = np.sqrt(new.scale * np.diag(new.shape))
    return (
        abs(new.scale - old.scale) <= tol * new.scale
        and float(np.max(np.abs(new.shape - old.shape))) <= tol * float(np.max(np.abs(new.shape)))
        and float(np.max(np.abs(new.m - old.m) / spread)) <= tol
    )


def iterate(Z, U, c, start: Candidate, cfg: ScatterConfig, max_iter: int) -> tuple[Candidate, bool, int]:
    """Itera weighted_step hasta que (s, m, Sigma) cambien menos que cfg.tol relativo."""
    current = start
    previous = None
    for it in range(1, max_iter + 1):
        step = weighted_step(Z, U, c, current.m, current.shape, cfg)
        if previous is not None and _small_change(previous, step, cfg.tol):
            LOGGER.debug("fixed point converged after %d steps (s=%.6g)", it, step.scale)
            return step, True, it
        previous, current = step, step
    return current, False, max_iter


def finalize(Z, U, c, candidate: Candidate, cfg: ScatterConfig, converged: bool, iterations: int) -> LocationScatter:
    """Escala final en (m, Sigma), S = s Sigma, distancias bajo S y pesos en [0, 1]."""
    _, d, fill = _distances(Z, U, candidate.m, candidate.shape)
    s = gs_scale(d, c, cfg.b, cfg.rho)
    S = s * candidate.shape
    S = 0.5 * (S + S.T)
    weights = cfg.rho.drho(d / (c * s)) / cfg.rho.max_derivative
    observed = np.full(d.shape[0], candidate.m.shape[0]) if fill is None else fill.observed
    return LocationScatter(
        m=candidate.m.copy(),
        S=S,
        gs_scale=s,
        case_distances=d / s,
        case_weights=np.clip(weights, 0.0, 1.0),
        converged=converged,
        iterations=iterations,
        observed=observed,
    )
