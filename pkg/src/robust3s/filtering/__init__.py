"""
Paquete filtering: filtro univariante consistente por celdas e interruptor global.
"""
from .cellwise import DEFAULT_XI, filter_matrix, filter_variable
from .model import FilterReport, Side, TailEstimates, TailFlagResult, VariableFilter
from .tails import (
    DEFAULT_ALPHA,
    T0,
    empirical_quantile,
    flag_proportion,
    propagation_probability,
    reference_cdf,
    tail_estimates,
)

__all__ = [
    "DEFAULT_ALPHA",
    "DEFAULT_XI",
    "FilterReport",
    "Side",
    "T0",
    "TailEstimates",
    "TailFlagResult",
    "VariableFilter",
    "empirical_quantile",
    "filter_matrix",
    "filter_variable",
    "flag_proportion",
    "propagation_probability",
    "reference_cdf",
    "tail_estimates",
]
