"""
Estimador S generalizado (GSE) para datos con celdas no observadas.
Con U completa se reduce exactamente al estimador S de datos completos.
"""
from __future__ import annotations

import logging

import numpy as np

from ..errors import DataError, DegenerateDesignError, NonFiniteError
from .fixed_point import Candidate, finalize, iterate, normalize_shape
from .initial import pairwise_initial
from .model import LocationScatter, ScatterConfig
from .sest import s_estimator_complete

LOGGER = logging.getLogger(__name__)


def _check_inputs(Z: np.ndarray, U: np.ndarray) -> None:
    if Z.ndim != 2 or U.shape != Z.shape:
        raise DataError(f"data {Z.shape} and observation matrix {U.shape} must be 2-d and equal in shape")
    empty = np.flatnonzero(~U.any(axis=1))
    if empty.size:
        raise DataError(f"row {int(empty[0])} has no observed coordinates")
    bad = np.argwhere(U & ~np.isfinite(Z))
    if bad.size:
        raise NonFiniteError(int(bad[0][0]), int(bad[0][1]))


def initial_estimate(Z, U, cfg: ScatterConfig, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """
    Estimador S sobre los casos completos si hay al menos max(2q, n/2) de ellos;
    en otro caso, el estimador por pares.
    """
    n, q = Z.shape
    complete = U.all(axis=1)
    n_complete = int(np.count_nonzero(complete))
    if n_complete >= max(2 * q + 1, 0.5 * n):
        LOGGER.debug("initial estimate from %d complete cases", n_complete)
        start = s_estimator_complete(Z[complete], cfg, seed)
        return start.m, start.S
    LOGGER.info("only %d complete cases; pairwise initial estimate", n_complete)
    return pairwise_initial(Z, U)


def gse(Z, U, cfg: ScatterConfig | None = None, seed=None) -> LocationScatter:
    """
    Itera pasos tipo EM ponderados hasta tolerancia relativa cfg.tol o cfg.max_iter.
    La no convergencia se informa en el resultado (converged = False) y en el log.
    """
    cfg = cfg or ScatterConfig()
    Z = np.asarray(Z, dtype=float)
    U = np.asarray(U, dtype=bool)
    _check_inputs(Z, U)
    if U.all():
        return s_estimator_complete(Z, cfg, seed)

    n, q = Z.shape
    if np.count_nonzero(U.sum(axis=0) > 0) < q:
        raise DegenerateDesignError("a coordinate is never observed")
    if not (U.sum(axis=1) > 1).any():
        raise DegenerateDesignError("no case observes more than one coordinate")
    Zc = np.where(U, Z, 0.0)
    c = cfg.constants_for(U.sum(axis=1))

    m0, S0 = initial_estimate(Zc, U, cfg, seed)
    start = Candidate(m=np.asarray(m0, dtype=float), shape=normalize_shape(S0), scale=np.inf)
    candidate, converged, iterations = iterate(Zc, U, c, start, cfg, cfg.max_iter)
    if not converged:
        LOGGER.warning("GSE did not converge in %d iterations", iterations)
    return finalize(Zc, U, c, candidate, cfg, converged, iterations)
