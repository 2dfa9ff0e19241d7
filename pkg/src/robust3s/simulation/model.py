"""
Modelo de la simulación Monte Carlo: configuración de escenario, datos generados y resultados.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import UsageError

CASEWISE_SIZE_CONTINUOUS = 8.0
CASEWISE_SIZE_MIXED = 7.0
DEFAULT_THRESHOLDS = (1 / 4, 1 / 3, 1 / 2)


class Scenario(str, Enum):
    CLEAN = "clean"
    CELLWISE = "cellwise"
    CASEWISE = "casewise"


class CovariateModel(str, Enum):
    NORMAL = "normal"
    NONNORMAL = "nonnormal"


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Escenario de simulación. Con p_d > 0 el diseño es mixto: p covariables continuas y p_d dicotómicas
    obtenidas de la misma normal latente. casewise_size None usa 8 (continuo) o 7 (mixto).
    """
    n: int = 300
    p: int = 15
    p_d: int = 0
    condition_number: float = 100.0
    beta_radius: float = 10.0
    sigma_eps: float = 0.5
    scenario: Scenario = Scenario.CLEAN
    epsilon: float = 0.0
    k: float = 0.0
    casewise_size: float | None = None
    replicates: int = 200
    seed: int = 0
    covariate_model: CovariateModel = CovariateModel.NORMAL
    dummy_thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        object.__setattr__(self, "covariate_model", CovariateModel(self.covariate_model))
        object.__setattr__(self, "dummy_thresholds", tuple(float(t) for t in self.dummy_thresholds))
        if not 0.0 <= self.epsilon < 0.5:
            raise UsageError(f"epsilon must lie in [0, 0.5), got {self.epsilon}")
        if self.k < 0:
            raise UsageError(f"k must be >= 0, got {self.k}")
        if self.replicates < 1:
            raise UsageError(f"replicates must be >= 1, got {self.replicates}")
        if self.n < 2 or self.p < 1 or self.p_d < 0:
            raise UsageError(f"invalid dimensions n={self.n}, p={self.p}, p_d={self.p_d}")
        if self.p + self.p_d < 2:
            raise UsageError("the random correlation needs at least two covariates")
        if self.condition_number <= 1.0:
            raise UsageError(f"condition number must exceed 1, got {self.condition_number}")
        if self.seed < 0:
            raise UsageError(f"seed must be non-negative, got {self.seed}")
        if self.p_d and len(self.dummy_thresholds) < self.p_d:
            raise UsageError(f"need {self.p_d} dummy thresholds, got {len(self.dummy_thresholds)}")

    @property
    def mixed(self) -> bool:
        return self.p_d > 0

    @property
    def case_size(self) -> float:
        if self.casewise_size is not None:
            return float(self.casewise_size)
        return CASEWISE_SIZE_MIXED if self.mixed else CASEWISE_SIZE_CONTINUOUS

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def label(self) -> str:
        if self.scenario == Scenario.CLEAN:
            return "clean"
        return f"{self.scenario.value} eps={self.epsilon:g} k={self.k:g}"


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Datos de un réplica. X continuas (n, p); D dicotómicas (n, p_d) o None; beta incluye
    las pendientes de X seguidas de las de D. Sigma es la correlación de la normal latente.
    """
    X: np.ndarray
    y: np.ndarray
    beta: np.ndarray
    Sigma: np.ndarray
    D: np.ndarray | None = None

    @property
    def design(self) -> np.ndarray:
        return self.X if self.D is None else np.column_stack([self.X, self.D])


@dataclass(frozen=True, eq=False)
class EstimatorOutput:
    """Pendientes estimadas y, si existen, intervalos (p, 2)."""
    beta: np.ndarray
    ci: np.ndarray | None = None


@dataclass(frozen=True)
class ReplicateRecord:
    replicate: int
    estimator: str
    mse: float | None = None
    cr: float | None = None
    cil: float | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class EstimatorSummary:
    """Medias Monte Carlo de un estimador; cr_bar y cil_bar son None sin intervalos."""
    estimator: str
    mse_bar: float | None
    cr_bar: float | None
    cil_bar: float | None
    n_ok: int
    n_failed: int


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    summaries: tuple[EstimatorSummary, ...]
    records: tuple[ReplicateRecord, ...]
    elapsed: float = 0.0

    def summary(self, estimator: str) -> EstimatorSummary:
        for s in self.summaries:
            if s.estimator == estimator:
                return s
        raise KeyError(estimator)

    @property
    def estimators(self) -> list[str]:
        return [s.estimator for s in self.summaries]
