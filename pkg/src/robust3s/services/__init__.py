"""
Paquete services: lectura y escritura de ficheros y generación de informes.
"""
from .dataset_service import DEFAULT_SENTINEL, DatasetService, DesignData
from .reports import (
    OutputFormat,
    Report,
    comparison_table,
    distance_table,
    filter_summary,
    fit_table,
    mixed_table,
    render,
    tails_table,
)
from .storage import atomic_output

__all__ = [
    "DEFAULT_SENTINEL",
    "DatasetService",
    "DesignData",
    "OutputFormat",
    "Report",
    "atomic_output",
    "comparison_table",
    "distance_table",
    "filter_summary",
    "fit_table",
    "mixed_table",
    "render",
    "tails_table",
]
