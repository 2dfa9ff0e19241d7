"""
Ejecución de escenarios Monte Carlo: genera, contamina y ajusta cada réplica, en paralelo con
ProcessPoolExecutor cuando hay más de un trabajador, y agrega MSE, CR y CIL por estimador.
"""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..errors import Robust3SError
from .contamination import contaminate_casewise, contaminate_cellwise
from .design import gen_clean, model_stats
from .estimators import DEFAULT_ESTIMATORS, ESTIMATORS, resolve
from .metrics import ci_length, coverage, mse
from .model import Dataset, EstimatorSummary, ReplicateRecord, Scenario, ScenarioConfig, ScenarioResult
from .seeding import data_stream, estimator_seed

LOGGER = logging.getLogger(__name__)

THREADS_ENV = "ROBUST3S_THREADS"


def worker_count(replicates: int) -> int:
    """Trabajadores limitados por ROBUST3S_THREADS (por defecto, núcleos disponibles)."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    try:
        limit = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        LOGGER.warning("ignoring invalid %s=%r", THREADS_ENV, raw)
        limit = os.cpu_count() or 1
    return max(1, min(limit, replicates))


def generate(cfg: ScenarioConfig, rng: np.random.Generator) -> Dataset:
    """Datos limpios y, según el escenario, contaminados con el mismo flujo aleatorio."""
    data = gen_clean(cfg, rng)
    if cfg.scenario == Scenario.CLEAN or cfg.epsilon == 0.0:
        return data
    if cfg.scenario == Scenario.CELLWISE:
        X, y = contaminate_cellwise(
            data.X, data.y, cfg.epsilon, cfg.k, model_stats(cfg, data.beta), rng, sigma_eps=cfg.sigma_eps
        )
    else:
        p = cfg.p
        offset = None if data.D is None else data.D @ data.beta[p:]
        X, y = contaminate_casewise(
            data.X, data.y, cfg.epsilon, cfg.k, cfg.case_size,
            data.Sigma[:p, :p], data.beta[:p], cfg.sigma_eps, rng, offset=offset,
        )
    return Dataset(X=X, y=y, beta=data.beta, Sigma=data.Sigma, D=data.D)


def run_replicate(cfg: ScenarioConfig, estimators: tuple[str, ...], replicate: int) -> list[ReplicateRecord]:
    data = generate(cfg, data_stream(cfg.seed, replicate))
    records = []
    for name in estimators:
        try:
            out = ESTIMATORS[name](data, estimator_seed(cfg.seed, replicate, name))
        except Robust3SError as exc:
            LOGGER.warning("replicate %d, estimator %s failed: %s", replicate, name, exc)
            records.append(ReplicateRecord(replicate, name, error=str(exc)))
            continue
        has_ci = out.ci is not None
        records.append(
            ReplicateRecord(
                replicate,
                name,
                mse=mse(out.beta, data.beta),
                cr=coverage(out.ci, data.beta) if has_ci else None,
                cil=ci_length(out.ci) if has_ci else None,
            )
        )
    return records


def _mean_or_none(values) -> float | None:
    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


def summarize(estimators, records) -> tuple[EstimatorSummary, ...]:
    out = []
    for name in estimators:
        mine = [r for r in records if r.estimator == name]
        ok = [r for r in mine if r.ok]
        with_ci = ok and all(r.cr is not None for r in ok)
        out.append(
            EstimatorSummary(
                estimator=name,
                mse_bar=_mean_or_none(r.mse for r in ok),
                cr_bar=_mean_or_none(r.cr for r in ok) if with_ci else None,
                cil_bar=_mean_or_none(r.cil for r in ok) if with_ci else None,
                n_ok=len(ok),
                n_failed=len(mine) - len(ok),
            )
        )
    return tuple(out)


def run_scenario(cfg: ScenarioConfig, estimators=DEFAULT_ESTIMATORS, *, workers: int | None = None) -> ScenarioResult:
    """
    Resultados idénticos con cualquier número de trabajadores: cada réplica usa su propio flujo
    y escribe en su posición.
    """
    estimators = resolve(estimators)
    workers = worker_count(cfg.replicates) if workers is None else max(1, min(workers, cfg.replicates))
    start = time.perf_counter()
    slots: list[list[ReplicateRecord] | None] = [None] * cfg.replicates
    if workers == 1:
        for r in range(cfg.replicates):
            slots[r] = run_replicate(cfg, estimators, r)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(run_replicate, cfg, estimators, r): r for r in range(cfg.replicates)}
            for future, r in futures.items():
                slots[r] = future.result()
    records = tuple(rec for slot in slots for rec in slot)
    elapsed = time.perf_counter() - start
    LOGGER.info("scenario %s (n=%d, N=%d) finished in %.1f s", cfg.label(), cfg.n, cfg.replicates, elapsed)
    return ScenarioResult(config=cfg, summaries=summarize(estimators, records), records=records, elapsed=elapsed)


def run_grid(
    base_cfg: ScenarioConfig,
    scenarios,
    k_grid,
    estimators=DEFAULT_ESTIMATORS,
    *,
    n_grid=None,
    workers: int | None = None,
) -> list[ScenarioResult]:
    """
    Barrido sobre (escenario, epsilon), k y n. scenarios es una secuencia de pares (Scenario, epsilon);
    el escenario limpio se ejecuta una sola vez por n.
    """
    results = []
    for n in n_grid or (base_cfg.n,):
        for scenario, epsilon in scenarios:
            scenario = Scenario(scenario)
            if scenario == Scenario.CLEAN:
                cfg = base_cfg.replace(n=int(n), scenario=scenario, epsilon=0.0, k=0.0)
                results.append(run_scenario(cfg, estimators, workers=workers))
                continue
            for k in k_grid:
                cfg = base_cfg.replace(n=int(n), scenario=scenario, epsilon=float(epsilon), k=float(k))
                results.append(run_scenario(cfg, estimators, workers=workers))
    return results


def plot_rows(results) -> list[dict]:
    """Filas en formato largo (scenario, epsilon, k, n, estimator, metric, value)."""
    rows = []
    for res in results:
        cfg = res.config
        for s in res.summaries:
            for metric, value in (("mse", s.mse_bar), ("cr", s.cr_bar), ("cil", s.cil_bar)):
                if value is None:
                    continue
                rows.append(
                    {
                        "scenario": cfg.scenario.value,
                        "epsilon": cfg.epsilon,
                        "k": cfg.k,
                        "n": cfg.n,
                        "estimator": s.estimator,
                        "metric": metric,
                        "value": value,
                    }
                )
    return rows
