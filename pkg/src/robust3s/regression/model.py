"""
Modelo de regresión: método, momentos particionados y ajuste con inferencia.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..filtering import FilterReport
from ..scatter import LocationScatter

DEFAULT_TAU = 0.05


class Method(str, Enum):
    THREE_S = "3S"
    TWO_S = "2S"
    LS = "LS"

    @classmethod
    def parse(cls, value: str) -> "Method":
        """Acepta '3s', '3S', '2s', 'ls'..."""
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            raise ValueError(f"unknown method {value!r}; expected one of 3s, 2s, ls") from None


@dataclass(frozen=True, eq=False)
class PartitionedMoments:
    """Sub-bloques de (m, S) con la respuesta en la última coordenada."""
    m_x: np.ndarray
    m_y: float
    S_xx: np.ndarray
    S_xy: np.ndarray
    S_yy: float

    @property
    def p(self) -> int:
        return int(self.m_x.shape[0])


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """
    Ajuste de regresión. asv es la covarianza asintótica estimada de (alpha, beta);
    ci tiene una fila (inferior, superior) por coeficiente, intercepto incluido.
    scatter solo existe para 3S y 2S; filter_report solo para 3S.
    """
    alpha: float
    beta: np.ndarray
    sigma_eps: float
    asv: np.ndarray
    ci: np.ndarray
    p_values: np.ndarray
    method: Method
    n: int
    tau: float = DEFAULT_TAU
    scatter: LocationScatter | None = None
    filter_report: FilterReport | None = None

    @property
    def p(self) -> int:
        return int(self.beta.shape[0])

    @property
    def coefficients(self) -> np.ndarray:
        return np.concatenate([[self.alpha], self.beta])

    @property
    def std_errors(self) -> np.ndarray:
        return np.sqrt(np.maximum(np.diag(self.asv), 0.0) / self.n)

    @property
    def covariate_flags(self) -> np.ndarray | None:
        """U* de las covariables (None si no hubo filtro)."""
        return None if self.filter_report is None else self.filter_report.effective_flags

    def fitted(self, X) -> np.ndarray:
        return self.alpha + np.asarray(X, dtype=float) @ self.beta
