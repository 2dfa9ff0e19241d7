"""
Paquete regression: regresión 3S, 2S y mínimos cuadrados con inferencia asintótica.
"""
from .compare import pairwise_distances
from .fits import check_xy, fit_2s, fit_3s, fit_ls, fit_method
from .imputation import impute_blp, imputed_design
from .inference import asv_estimate, confidence_intervals, ls_asv
from .model import DEFAULT_TAU, Method, PartitionedMoments, RegressionFit
from .plugin import partition_moments, plug_in_coefficients, residual_scale

__all__ = [
    "DEFAULT_TAU",
    "Method",
    "PartitionedMoments",
    "RegressionFit",
    "asv_estimate",
    "check_xy",
    "confidence_intervals",
    "fit_2s",
    "fit_3s",
    "fit_ls",
    "fit_method",
    "impute_blp",
    "imputed_design",
    "ls_asv",
    "pairwise_distances",
    "partition_moments",
    "plug_in_coefficients",
    "residual_scale",
]
