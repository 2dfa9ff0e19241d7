"""
Informes de salida: tablas de coeficientes, tabla de colas del filtro y resúmenes de simulación,
en texto legible (3 decimales), TSV o JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd

from ..dummy import MixedFit
from ..filtering import FilterReport
from ..regression import RegressionFit


class OutputFormat(str, Enum):
    TABLE = "table"
    TSV = "tsv"
    JSON = "json"


INTERCEPT = "(intercept)"


@dataclass
class Report:
    """Cabecera (pares clave/valor) y tablas con título."""
    meta: dict = field(default_factory=dict)
    tables: list[tuple[str, pd.DataFrame]] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, title: str, table: pd.DataFrame) -> "Report":
        self.tables.append((title, table))
        return self


def fit_table(fit: RegressionFit, names) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "term": [INTERCEPT, *map(str, names)],
            "estimate": fit.coefficients,
            "std_error": fit.std_errors,
            "ci_lower": fit.ci[:, 0],
            "ci_upper": fit.ci[:, 1],
            "p_value": fit.p_values,
        }
    )


def mixed_table(fit: MixedFit, x_names, d_names) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "term": [INTERCEPT, *map(str, x_names), *map(str, d_names)],
            "kind": ["intercept"] + ["continuous"] * len(x_names) + ["dummy"] * len(d_names),
            "estimate": fit.coefficients,
        }
    )


def comparison_table(fits: dict, names) -> pd.DataFrame:
    """Coeficiente y p-valor por método, lado a lado."""
    table = pd.DataFrame({"term": [INTERCEPT, *map(str, names)]})
    for label, fit in fits.items():
        table[f"estimate_{label}"] = fit.coefficients
        table[f"p_value_{label}"] = fit.p_values
    return table


def distance_table(labels, matrix) -> pd.DataFrame:
    table = pd.DataFrame(np.asarray(matrix), columns=list(labels))
    table.insert(0, "method", list(labels))
    return table


def filter_summary(report: FilterReport, names) -> dict:
    return {
        "flagged_fraction": report.flagged_fraction,
        "affected_fraction": report.affected_fraction,
        "n_complete": report.n_complete,
        "switch_off": report.switch_off,
        "flagged_per_column": {str(n): int(c) for n, c in zip(names, report.per_column_counts)},
        "exempt_columns": [str(names[j]) for j in report.exempt],
    }


def tails_table(report: FilterReport, names) -> pd.DataFrame:
    """(eta, s, d_hat, t_hat, corte, filtrados) de ambas colas por variable."""
    rows = []
    for j, name in enumerate(names):
        est, up, low = report.estimates[j], report.upper[j], report.lower[j]
        rows.append(
            {
                "variable": str(name),
                "eta_upper": est.eta_upper,
                "s_upper": est.s_upper,
                "d_upper": up.d_hat,
                "t_upper": up.t_hat,
                "cutoff_upper": up.cutoff,
                "flagged_upper": up.n_flagged,
                "eta_lower": est.eta_lower,
                "s_lower": est.s_lower,
                "d_lower": low.d_hat,
                "t_lower": low.t_hat,
                "cutoff_lower": low.cutoff,
                "flagged_lower": low.n_flagged,
                "exempt": j in report.exempt,
            }
        )
    return pd.DataFrame(rows)


def _json_value(value):
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def _records(table: pd.DataFrame) -> list[dict]:
    return [{k: _json_value(v) for k, v in row.items()} for row in table.to_dict(orient="records")]


def _header(meta: dict) -> list[str]:
    return [f"# {key}: {value}" for key, value in meta.items()]


def render(report: Report, fmt: OutputFormat | str) -> str:
    """
    table: 3 decimales; tsv: valores completos; json: floats con la representación más corta
    que reproduce el valor exacto.
    """
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.JSON:
        payload = {"meta": _json_value(report.meta)}
        payload.update({title: _records(table) for title, table in report.tables})
        payload.update(_json_value(report.extra))
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"

    lines = _header(report.meta)
    for title, table in report.tables:
        if lines:
            lines.append("")
        lines.append(f"## {title}")
        if fmt == OutputFormat.TSV:
            lines.append(table.to_csv(sep="\t", index=False, lineterminator="\n").rstrip("\n"))
        else:
            lines.append(table.to_string(index=False, float_format=lambda v: f"{v:.3f}"))
    return "\n".join(lines) + "\n"
