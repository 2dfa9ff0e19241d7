"""
Modelo de la línea de comandos: comando y configuración de ejecución.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..filtering import DEFAULT_ALPHA, DEFAULT_XI
from ..regression import DEFAULT_TAU
from ..services import DEFAULT_SENTINEL, OutputFormat
from ..simulation import CovariateModel, Scenario


class Command(str, Enum):
    FIT = "fit"
    FILTER = "filter"
    SIMULATE = "simulate"


ALTERNATING = "alternating"
FIT_METHODS = ("3s", "2s", "ls", ALTERNATING)


@dataclass(frozen=True)
class RunConfig:
    """
    Configuración resuelta de una ejecución.
    dummies: None, "auto" o tupla de nombres. methods: métodos de ajuste en minúsculas.
    seed_generated indica que la semilla se tomó de la entropía del sistema.
    Los campos de simulación solo se usan con el comando simulate.
    """
    command: Command
    input: str | None = None
    response: str | None = None
    dummies: str | tuple[str, ...] | None = None
    methods: tuple[str, ...] = ("3s",)
    alpha_filter: float = DEFAULT_ALPHA
    xi: float = DEFAULT_XI
    tau: float = DEFAULT_TAU
    seed: int = 0
    seed_generated: bool = False
    fmt: OutputFormat = OutputFormat.TABLE
    out: str | None = None
    plot_data: str | None = None
    sentinel: str = DEFAULT_SENTINEL
    verbose: int = 0
    # simulate
    scenarios: tuple[Scenario, ...] = (Scenario.CLEAN, Scenario.CELLWISE, Scenario.CASEWISE)
    epsilons: tuple[float, ...] | None = None
    k_grid: tuple[float, ...] | None = None
    n_grid: tuple[int, ...] = (300,)
    p: int = 15
    p_d: int = 0
    replicates: int = 200
    estimators: tuple[str, ...] = ("3S", "2S", "LS")
    covariate_model: CovariateModel = CovariateModel.NORMAL
    condition_number: float = 100.0
    beta_radius: float = 10.0
    sigma_eps: float = 0.5
    casewise_size: float | None = None
    dummy_thresholds: tuple[float, ...] = (1 / 4, 1 / 3, 1 / 2)
