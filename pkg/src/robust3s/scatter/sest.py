"""
Estimador S de ubicación y dispersión para datos completos (bisquare, ruptura 50 %).
Candidatos desde subconjuntos elementales de q+1 casos, pasos de concentración y
refinamiento completo de los mejores candidatos.
"""
from __future__ import annotations

import logging

import numpy as np

from ..errors import DataError, DegenerateDesignError, NonFiniteError, NumericalError
from .fixed_point import Candidate, finalize, iterate, normalize_shape
from .model import LocationScatter, ScatterConfig

LOGGER = logging.getLogger(__name__)


def _check_complete(Z: np.ndarray) -> None:
    if Z.ndim != 2:
        raise DataError(f"expected a 2-d matrix, got shape {Z.shape}")
    bad = np.argwhere(~np.isfinite(Z))
    if bad.size:
        raise NonFiniteError(int(bad[0][0]), int(bad[0][1]))


def elemental_subsets(n: int, size: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """count subconjuntos de size índices distintos de range(n)."""
    keys = rng.random((count, n))
    return np.argpartition(keys, size - 1, axis=1)[:, :size]


def _candidates(Z, c, cfg: ScatterConfig, rng: np.random.Generator) -> list[Candidate]:
    n, q = Z.shape
    found = []
    for idx in elemental_subsets(n, q + 1, cfg.subsamples, rng):
        sub = Z[idx]
        try:
            shape = normalize_shape(np.cov(sub, rowvar=False).reshape(q, q))
            candidate, _, _ = iterate(Z, None, c, Candidate(sub.mean(axis=0), shape, np.inf), cfg, cfg.concentration_steps)
        except NumericalError:
            continue
        found.append(candidate)
    return found


def s_estimator_complete(Z, cfg: ScatterConfig | None = None, seed=None) -> LocationScatter:
    """
    Minimiza det(S) sujeto a (1/n) sum rho(d_i / (c_q s)) = b; determinista dada la semilla.
    seed acepta un entero, una SeedSequence o un Generator.
    """
    cfg = cfg or ScatterConfig()
    Z = np.asarray(Z, dtype=float)
    _check_complete(Z)
    n, q = Z.shape
    if n <= 2 * q:
        raise DegenerateDesignError(f"need more than {2 * q} cases, got {n}")
    rng = np.random.default_rng(seed)
    c = cfg.constant(q)

    found = _candidates(Z, c, cfg, rng)
    if not found:
        raise DegenerateDesignError("all elemental subsets are singular")
    order = sorted(range(len(found)), key=lambda i: found[i].scale)

    best = None
    for i in order[: cfg.best]:
        try:
            result = iterate(Z, None, c, found[i], cfg, cfg.max_iter)
        except NumericalError:
            continue
        if best is None or result[0].scale < best[0].scale:
            best = result
    if best is None:
        raise DegenerateDesignError("no candidate could be refined")

    candidate, converged, iterations = best
    if not converged:
        LOGGER.warning("S-estimator did not converge in %d iterations", iterations)
    return finalize(Z, None, c, candidate, cfg, converged, iterations)
