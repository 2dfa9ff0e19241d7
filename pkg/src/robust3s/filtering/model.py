"""
Modelo del filtro univariante: estimaciones de cola, resultado por cola e informe matricial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class Side(str, Enum):
    """Lado de la cola."""
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class TailEstimates:
    """
    Ubicación y escala de las dos colas de una muestra.
    eta_upper: cuantil empírico (1 - alpha); s_upper: mediana de los excesos sobre eta_upper.
    eta_lower: cuantil empírico alpha; s_lower: mediana de los defectos bajo eta_lower.
    Una escala 0 indica cola degenerada (la variable queda exenta en ese lado).
    """
    eta_upper: float
    s_upper: float
    eta_lower: float
    s_lower: float
    alpha: float

    @property
    def degenerate(self) -> bool:
        return self.s_upper <= 0.0 or self.s_lower <= 0.0


@dataclass(frozen=True)
class TailFlagResult:
    """
    Proporción marcada d_hat, umbral t_hat en escala estandarizada y corte en escala de datos.
    cutoff es +inf (cola superior) o -inf (inferior) cuando no hay corte.
    """
    d_hat: float
    t_hat: float
    cutoff: float
    tail_size: int = 0
    n_flagged: int = 0

    @classmethod
    def empty(cls, side: Side) -> "TailFlagResult":
        inf = math.inf if side == Side.UPPER else -math.inf
        return cls(d_hat=0.0, t_hat=math.inf, cutoff=inf)


@dataclass(frozen=True)
class VariableFilter:
    """Resultado de filtrar una columna."""
    flags: np.ndarray
    upper: TailFlagResult
    lower: TailFlagResult
    estimates: TailEstimates
    exempt: bool = False


@dataclass(frozen=True)
class FilterReport:
    """
    Informe del filtro sobre una matriz n x p.
    flags: U (1 = se conserva, 0 = filtrada). effective_flags: U* tras el interruptor global.
    """
    flags: np.ndarray
    effective_flags: np.ndarray
    estimates: tuple[TailEstimates, ...]
    upper: tuple[TailFlagResult, ...]
    lower: tuple[TailFlagResult, ...]
    n_complete: int
    switch_off: bool
    xi: float
    exempt: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return int(self.flags.shape[0])

    @property
    def p(self) -> int:
        return int(self.flags.shape[1])

    @property
    def affected_fraction(self) -> float:
        """(n - n0) / n: fracción de casos con al menos una celda filtrada."""
        return (self.n - self.n_complete) / self.n

    @property
    def flagged_fraction(self) -> float:
        """Fracción de celdas con U = 0."""
        return float(1.0 - self.flags.mean()) if self.flags.size else 0.0

    @property
    def per_column_counts(self) -> np.ndarray:
        return (self.flags == 0).sum(axis=0)
