"""
Paquete scatter: estimación robusta de ubicación y dispersión multivariante.
Estimador S para datos completos y estimador S generalizado (GSE) para datos filtrados.
"""
from .constants import consistency_constant, expected_rho
from .distances import conditional_fill, mahalanobis, partial_mahalanobis
from .gse import gse
from .initial import pairwise_initial
from .model import LocationScatter, ScatterConfig
from .rho import RhoFunction, RhoKind, rho_derivative, rho_eval, rho_second_derivative
from .scale import gs_scale, scale_residual
from .sest import s_estimator_complete

__all__ = [
    "LocationScatter",
    "RhoFunction",
    "RhoKind",
    "ScatterConfig",
    "conditional_fill",
    "consistency_constant",
    "expected_rho",
    "gs_scale",
    "gse",
    "mahalanobis",
    "pairwise_initial",
    "partial_mahalanobis",
    "rho_derivative",
    "rho_eval",
    "rho_second_derivative",
    "s_estimator_complete",
    "scale_residual",
]
