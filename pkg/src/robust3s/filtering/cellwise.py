"""
Filtro por celdas: aplica el filtro univariante a cada columna y el interruptor global.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import DataError, NonFiniteError
from .model import FilterReport, Side, TailFlagResult, VariableFilter
from .tails import DEFAULT_ALPHA, flag_proportion, tail_estimates

LOGGER = logging.getLogger(__name__)

DEFAULT_XI = 0.01


def _flag_side(x: np.ndarray, eta: float, scale: float, side: Side) -> tuple[np.ndarray, TailFlagResult]:
    """Marca los puntos de una cola; devuelve máscara de filtrados y el resultado de la cola."""
    if side == Side.UPPER:
        in_tail = x > eta
        standardized = (x - eta) / scale
    else:
        in_tail = x < eta
        standardized = (eta - x) / scale
    result = flag_proportion(standardized[in_tail], eta=eta, scale=scale, side=side)
    flagged = in_tail & (standardized > result.t_hat)
    return flagged, result


def filter_variable(sample, alpha: float = DEFAULT_ALPHA, *, name: str | int = "") -> VariableFilter:
    """
    Filtra una variable: 0 en los puntos por debajo de eta_l - s_l*t_l o por encima de eta_u + s_u*t_u.
    Una cola degenerada (escala 0) deja la variable entera sin filtrar.
    """
    x = np.asarray(sample, dtype=float).ravel()
    est = tail_estimates(x, alpha)
    if est.degenerate:
        LOGGER.warning("variable %s has a degenerate tail; exempted from filtering", name)
        return VariableFilter(
            flags=np.ones(x.size, dtype=bool),
            upper=TailFlagResult.empty(Side.UPPER),
            lower=TailFlagResult.empty(Side.LOWER),
            estimates=est,
            exempt=True,
        )

    flagged_u, upper = _flag_side(x, est.eta_upper, est.s_upper, Side.UPPER)
    flagged_l, lower = _flag_side(x, est.eta_lower, est.s_lower, Side.LOWER)
    return VariableFilter(flags=~(flagged_u | flagged_l), upper=upper, lower=lower, estimates=est)


def _check_matrix(X: np.ndarray, alpha: float) -> None:
    if X.ndim != 2:
        raise DataError(f"expected a 2-d matrix, got shape {X.shape}")
    n, p = X.shape
    if n == 0:
        raise DataError("empty sample")
    bad = np.argwhere(~np.isfinite(X))
    if bad.size:
        row, col = (int(v) for v in bad[0])
        raise NonFiniteError(row, col)
    if n < p + 1:
        raise DataError(f"need at least p+1 = {p + 1} rows, got {n}")
    if n < math.ceil(1.0 / alpha):
        raise DataError(f"need at least ceil(1/alpha) = {math.ceil(1.0 / alpha)} values per column, got {n}")


def filter_matrix(X, alpha: float = DEFAULT_ALPHA, xi: float = DEFAULT_XI, *, names=None) -> FilterReport:
    """
    Filtra columna a columna y aplica el interruptor: si (n - n0)/n <= xi se devuelve U* = 1.
    """
    X = np.asarray(X, dtype=float)
    _check_matrix(X, alpha)
    n, p = X.shape
    names = list(names) if names is not None else list(range(p))

    results = [filter_variable(X[:, j], alpha, name=names[j]) for j in range(p)]
    U = np.column_stack([r.flags for r in results]) if p else np.ones((n, 0), dtype=bool)
    n_complete = int(np.count_nonzero(U.all(axis=1)))
    switch_off = (n - n_complete) / n <= xi
    effective = np.ones_like(U) if switch_off else U.copy()
    LOGGER.info(
        "filter: %d of %d cells flagged, %d incomplete cases, switch %s",
        int(np.count_nonzero(~U)), U.size, n - n_complete, "off" if switch_off else "on",
    )
    return FilterReport(
        flags=U,
        effective_flags=effective,
        estimates=tuple(r.estimates for r in results),
        upper=tuple(r.upper for r in results),
        lower=tuple(r.lower for r in results),
        n_complete=n_complete,
        switch_off=switch_off,
        xi=xi,
        exempt=tuple(j for j, r in enumerate(results) if r.exempt),
    )
