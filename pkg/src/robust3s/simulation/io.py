"""
Serialización de escenarios (texto clave=valor) y de resultados (tablas pandas y JSON).
"""
from __future__ import annotations

import dataclasses
from pathlib import Path

import pandas as pd

from ..errors import UsageError
from .model import CovariateModel, Scenario, ScenarioConfig, ScenarioResult

_FIELDS = {f.name: f for f in dataclasses.fields(ScenarioConfig)}


def parse_key_values(text: str, source: str = "<config>") -> dict[str, str]:
    """Líneas clave=valor; '#' inicia un comentario; '-' en las claves equivale a '_'."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _convert(name: str, value: str):
    if name == "scenario":
        return Scenario(value)
    if name == "covariate_model":
        return CovariateModel(value)
    if name == "dummy_thresholds":
        return tuple(float(v) for v in value.split(",") if v.strip())
    if name == "casewise_size":
        return None if value.lower() in ("", "none") else float(value)
    if name in ("n", "p", "p_d", "replicates", "seed"):
        return int(value)
    return float(value)


def config_from_mapping(values: dict[str, str], base: ScenarioConfig | None = None) -> ScenarioConfig:
    changes = {}
    for key, value in values.items():
        if key not in _FIELDS:
            raise UsageError(f"unknown scenario key {key!r}")
        try:
            changes[key] = _convert(key, value)
        except ValueError as exc:
            raise UsageError(f"invalid value for {key}: {value!r}") from exc
    return dataclasses.replace(base or ScenarioConfig(), **changes)


def read_config(path) -> ScenarioConfig:
    path = Path(path)
    return config_from_mapping(parse_key_values(path.read_text(encoding="utf-8"), str(path)))


def format_config(cfg: ScenarioConfig) -> str:
    lines = []
    for name in _FIELDS:
        value = getattr(cfg, name)
        if isinstance(value, (Scenario, CovariateModel)):
            value = value.value
        elif isinstance(value, tuple):
            value = ",".join(repr(v) for v in value)
        elif value is None:
            value = "none"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{name}={value}")
    return "\n".join(lines) + "\n"


def write_config(cfg: ScenarioConfig, path) -> None:
    Path(path).write_text(format_config(cfg), encoding="utf-8")


def results_frame(results: list[ScenarioResult]) -> pd.DataFrame:
    """Una fila por (escenario, estimador)."""
    rows = []
    for res in results:
        cfg = res.config
        for s in res.summaries:
            rows.append(
                {
                    "scenario": cfg.scenario.value,
                    "epsilon": cfg.epsilon,
                    "k": cfg.k,
                    "n": cfg.n,
                    "p": cfg.p,
                    "p_d": cfg.p_d,
                    "estimator": s.estimator,
                    "mse_bar": s.mse_bar,
                    "cr_bar": s.cr_bar,
                    "cil_bar": s.cil_bar,
                    "n_ok": s.n_ok,
                    "n_failed": s.n_failed,
                }
            )
    return pd.DataFrame(rows)


def results_payload(results: list[ScenarioResult]) -> list[dict]:
    """Estructura JSON con resúmenes y el detalle por réplica."""
    payload = []
    for res in results:
        payload.append(
            {
                "config": {
                    k: (v.value if isinstance(v, (Scenario, CovariateModel)) else v)
                    for k, v in dataclasses.asdict(res.config).items()
                },
                "summaries": [dataclasses.asdict(s) for s in res.summaries],
                "replicates": [dataclasses.asdict(r) for r in res.records],
            }
        )
    return payload
