"""
Modelo del estimador de ubicación y dispersión: configuración y resultado.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import consistency_constant
from .rho import RhoFunction


@dataclass(frozen=True)
class ScatterConfig:
    """
    Parámetros del estimador S / GSE.
    b = 0.5 da punto de ruptura del 50 %. subsamples subconjuntos elementales con
    concentration_steps pasos cada uno; los best mejores se iteran hasta tol o max_iter.
    """
    b: float = 0.5
    rho: RhoFunction = field(default_factory=RhoFunction)
    subsamples: int = 500
    concentration_steps: int = 2
    best: int = 10
    max_iter: int = 200
    tol: float = 1e-7

    def __post_init__(self):
        if not 0.0 < self.b < 1.0:
            raise ValueError(f"b must lie in (0, 1), got {self.b}")
        if self.subsamples < 1 or self.best < 1:
            raise ValueError("subsamples and best must be positive")
        if self.max_iter < 1 or self.tol <= 0.0:
            raise ValueError("max_iter must be positive and tol > 0")

    def constant(self, k: int) -> float:
        return consistency_constant(int(k), self.b, self.rho.kind)

    def consistency_constants(self, q: int) -> dict[int, float]:
        """Mapa k -> c_k para k = 1..q."""
        return {k: self.constant(k) for k in range(1, q + 1)}

    def constants_for(self, observed: np.ndarray) -> np.ndarray:
        """c_{k_i} para cada caso según su número de coordenadas observadas."""
        observed = np.asarray(observed, dtype=int)
        table = np.array([0.0] + [self.constant(k) for k in range(1, int(observed.max()) + 1)])
        return table[observed]


@dataclass(frozen=True, eq=False)
class LocationScatter:
    """
    Resultado del estimador: m (q,), S (q, q) simétrica definida positiva, escala S generalizada,
    distancias parciales bajo S, pesos de caso en [0, 1] y diagnóstico de convergencia.
    """
    m: np.ndarray
    S: np.ndarray
    gs_scale: float
    case_distances: np.ndarray
    case_weights: np.ndarray
    converged: bool
    iterations: int
    observed: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return int(self.m.shape[0])

    @property
    def shape(self) -> np.ndarray:
        """Matriz de forma con determinante 1."""
        sign, logdet = np.linalg.slogdet(self.S)
        return self.S / np.exp(logdet / self.dim)

    @property
    def zero_weight_fraction(self) -> float:
        """Fracción de casos con peso exactamente 0."""
        return float(np.mean(self.case_weights == 0.0))
