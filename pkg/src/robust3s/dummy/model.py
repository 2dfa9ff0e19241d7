"""
Modelo del ajuste con covariables continuas y dicotómicas.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..filtering import DEFAULT_ALPHA, DEFAULT_XI
from ..regression import DEFAULT_TAU, Method, RegressionFit
from ..scatter import ScatterConfig

MAX_ITERATIONS = 20


@dataclass(frozen=True)
class MixedOptions:
    """
    Opciones del algoritmo alternante. method elige el paso continuo (3S por defecto, 2S como
    referencia). El bucle para cuando el mayor cambio absoluto de (alpha, beta_x, beta_d) es < tol.
    """
    method: Method = Method.THREE_S
    max_iter: int = MAX_ITERATIONS
    tol: float = 1e-6
    alpha_filter: float = DEFAULT_ALPHA
    xi: float = DEFAULT_XI
    cfg: ScatterConfig = field(default_factory=ScatterConfig)
    tau: float = DEFAULT_TAU
    seed: int | None = None

    def __post_init__(self):
        if self.method == Method.LS:
            raise ValueError("the continuous step must be 3S or 2S")
        if not 1 <= self.max_iter <= MAX_ITERATIONS:
            raise ValueError(f"max_iter must lie in [1, {MAX_ITERATIONS}]")


@dataclass(frozen=True, eq=False)
class MRegression:
    """Ajuste M sin intercepto: coeficientes, pesos finales y escala fija."""
    coef: np.ndarray
    weights: np.ndarray
    scale: float
    iterations: int


@dataclass(frozen=True, eq=False)
class MixedFit:
    alpha: float
    beta_x: np.ndarray
    beta_d: np.ndarray
    iterations: int
    converged: bool
    inner_fit: RegressionFit

    @property
    def coefficients(self) -> np.ndarray:
        return np.concatenate([[self.alpha], self.beta_x, self.beta_d])

    def fitted(self, X, D) -> np.ndarray:
        return self.alpha + np.asarray(X, dtype=float) @ self.beta_x + np.asarray(D, dtype=float) @ self.beta_d
