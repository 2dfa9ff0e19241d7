"""
Paquete simulation: procesos generadores, contaminación por celdas y por casos, métricas
Monte Carlo y ejecución de escenarios.
"""
from .contamination import contaminate_casewise, contaminate_cellwise, leverage_direction
from .design import (
    ModelStats,
    dichotomize,
    gen_clean,
    gen_mixed,
    model_stats,
    random_beta,
    random_correlation,
    to_marginals,
)
from .estimators import DEFAULT_ESTIMATORS, ESTIMATORS
from .io import format_config, read_config, results_frame, results_payload, write_config
from .metrics import ci_length, coverage, mse
from .model import (
    CovariateModel,
    Dataset,
    EstimatorOutput,
    EstimatorSummary,
    ReplicateRecord,
    Scenario,
    ScenarioConfig,
    ScenarioResult,
)
from .runner import generate, plot_rows, run_grid, run_scenario

__all__ = [
    "CovariateModel",
    "DEFAULT_ESTIMATORS",
    "Dataset",
    "ESTIMATORS",
    "EstimatorOutput",
    "EstimatorSummary",
    "ModelStats",
    "ReplicateRecord",
    "Scenario",
    "ScenarioConfig",
    "ScenarioResult",
    "ci_length",
    "contaminate_casewise",
    "contaminate_cellwise",
    "coverage",
    "dichotomize",
    "format_config",
    "gen_clean",
    "gen_mixed",
    "generate",
    "leverage_direction",
    "model_stats",
    "mse",
    "plot_rows",
    "random_beta",
    "random_correlation",
    "read_config",
    "results_frame",
    "results_payload",
    "run_grid",
    "run_scenario",
    "to_marginals",
    "write_config",
]
