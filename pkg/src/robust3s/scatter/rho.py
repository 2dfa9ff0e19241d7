"""
Funciones rho acotadas usadas por los estimadores S y la inferencia.
Bisquare de Tukey rho_B(t) = min(1, 1 - (1 - t)^3) y Huber truncada rho_H(t) = min(1, t^2 / 2),
ambas evaluadas sobre distancias (t >= 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

SQRT2 = math.sqrt(2.0)


class RhoKind(str, Enum):
    BISQUARE = "tukey_bisquare"
    HUBER = "huber"


def _as_kind(rho) -> RhoKind:
    if isinstance(rho, RhoFunction):
        return rho.kind
    return RhoKind(rho)


def _nonnegative(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise ValueError("rho functions are defined for t >= 0")
    return arr


def _out(arr: np.ndarray, like):
    return float(arr) if np.ndim(like) == 0 else arr


def rho_eval(rho, t):
    """Valor de rho en t (escalar o arreglo)."""
    kind = _as_kind(rho)
    x = _nonnegative(t)
    if kind == RhoKind.BISQUARE:
        out = np.where(x < 1.0, 1.0 - (1.0 - np.minimum(x, 1.0)) ** 3, 1.0)
    else:
        out = np.minimum(1.0, 0.5 * x * x)
    return _out(out, t)


def rho_derivative(rho, t):
    """rho'(t); vale 0 a partir del punto de rechazo."""
    kind = _as_kind(rho)
    x = _nonnegative(t)
    if kind == RhoKind.BISQUARE:
        out = np.where(x < 1.0, 3.0 * (1.0 - np.minimum(x, 1.0)) ** 2, 0.0)
    else:
        out = np.where(x < SQRT2, x, 0.0)
    return _out(out, t)


def rho_second_derivative(rho, t):
    """rho''(t); en el punto de rechazo se toma el límite por la derecha (0)."""
    kind = _as_kind(rho)
    x = _nonnegative(t)
    if kind == RhoKind.BISQUARE:
        out = np.where(x < 1.0, -6.0 * (1.0 - np.minimum(x, 1.0)), 0.0)
    else:
        out = np.where(x < SQRT2, 1.0, 0.0)
    return _out(out, t)


@dataclass(frozen=True)
class RhoFunction:
    """Función rho seleccionada por tipo."""
    kind: RhoKind = RhoKind.BISQUARE

    @property
    def rejection_point(self) -> float:
        return 1.0 if self.kind == RhoKind.BISQUARE else SQRT2

    @property
    def max_derivative(self) -> float:
        """Supremo de rho' en [0, inf); sirve para llevar los pesos a [0, 1]."""
        return 3.0 if self.kind == RhoKind.BISQUARE else SQRT2

    def rho(self, t):
        return rho_eval(self, t)

    def drho(self, t):
        return rho_derivative(self, t)

    def d2rho(self, t):
        return rho_second_derivative(self, t)
