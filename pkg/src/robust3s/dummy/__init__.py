"""
Paquete dummy: modelos con covariables continuas y dicotómicas mediante el algoritmo
alternante de regresión M y regresión 3S.
"""
from .alternating import alternating_fit
from .mest import detect_dummy_columns, initial_sweep, m_regression, m_regression_fit
from .model import MAX_ITERATIONS, MixedFit, MixedOptions, MRegression

__all__ = [
    "MAX_ITERATIONS",
    "MRegression",
    "MixedFit",
    "MixedOptions",
    "alternating_fit",
    "detect_dummy_columns",
    "initial_sweep",
    "m_regression",
    "m_regression_fit",
]
