"""
robust3s: regresión lineal robusta frente a outliers por celdas y por casos.
Filtro univariante consistente, estimador S generalizado sobre datos incompletos y
coeficientes por sustitución con inferencia asintótica.
"""
from .dummy import MixedOptions, alternating_fit
from .errors import DataError, NumericalError, Robust3SError, UsageError
from .filtering import filter_matrix, filter_variable
from .regression import Method, RegressionFit, fit_2s, fit_3s, fit_ls, fit_method
from .scatter import ScatterConfig, gse, s_estimator_complete

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "Method",
    "MixedOptions",
    "NumericalError",
    "RegressionFit",
    "Robust3SError",
    "ScatterConfig",
    "UsageError",
    "alternating_fit",
    "filter_matrix",
    "filter_variable",
    "fit_2s",
    "fit_3s",
    "fit_ls",
    "fit_method",
    "gse",
    "s_estimator_complete",
]
