"""
Ejecutor de comandos: aplica un RunConfig usando los servicios y los estimadores.
"""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from ..dummy import MixedOptions, alternating_fit
from ..errors import UsageError
from ..filtering import filter_matrix
from ..regression import Method, fit_method, pairwise_distances
from ..services import (
    DatasetService,
    Report,
    atomic_output,
    comparison_table,
    distance_table,
    filter_summary,
    fit_table,
    mixed_table,
    render,
    tails_table,
)
from ..simulation import ScenarioConfig, Scenario, plot_rows, results_frame, results_payload, run_grid
from .model import ALTERNATING, Command, RunConfig

LOGGER = logging.getLogger(__name__)

# Rejillas por defecto de la simulación con variables continuas
DEFAULT_EPSILONS = {Scenario.CELLWISE: (0.01, 0.05), Scenario.CASEWISE: (0.10,)}
DEFAULT_K_GRIDS = {
    Scenario.CELLWISE: tuple(float(k) for k in range(1, 11)),
    Scenario.CASEWISE: tuple(float(k) for k in range(1, 16)),
}


class CommandExecutor:
    """
    Ejecuta un RunConfig y devuelve el texto del informe.
    Los ficheros de salida se escriben de forma atómica.
    """

    def __init__(self, datasets: DatasetService | None = None) -> None:
        self._datasets = datasets

    def _service(self, cfg: RunConfig) -> DatasetService:
        return self._datasets or DatasetService(cfg.sentinel)

    def execute(self, cfg: RunConfig) -> str:
        if cfg.command == Command.FIT:
            return self.cmd_fit(cfg)
        if cfg.command == Command.FILTER:
            return self.cmd_filter(cfg)
        return self.cmd_simulate(cfg)

    def _emit(self, cfg: RunConfig, report: Report, path: str | None) -> str:
        text = render(report, cfg.fmt)
        if path:
            with atomic_output(path) as fh:
                fh.write(text)
        return text

    def cmd_fit(self, cfg: RunConfig) -> str:
        svc = self._service(cfg)
        frame = svc.read(cfg.input)
        data = svc.split(frame, cfg.response, cfg.dummies)
        meta = {"command": "fit", "seed": cfg.seed, "n": int(data.y.shape[0]), "response": data.response}
        report = Report(meta=meta)

        if cfg.methods == (ALTERNATING,):
            if not data.d_names:
                raise UsageError("method alternating requires at least one dummy column (--dummies)")
            options = MixedOptions(alpha_filter=cfg.alpha_filter, xi=cfg.xi, tau=cfg.tau, seed=cfg.seed)
            fit = alternating_fit(data.X, data.D, data.y, options)
            meta.update(method=ALTERNATING, iterations=fit.iterations, converged=fit.converged)
            report.add("coefficients", mixed_table(fit, data.x_names, data.d_names))
            self._add_filter(report, fit.inner_fit.filter_report, data.x_names)
            return self._emit(cfg, report, cfg.out)

        X = np.column_stack([data.X, data.D]) if data.d_names else data.X
        names = data.x_names + data.d_names
        fits = {}
        for m in cfg.methods:
            method = Method.parse(m)
            fits[method.value] = fit_method(
                method, X, data.y, alpha_filter=cfg.alpha_filter, xi=cfg.xi, tau=cfg.tau, seed=cfg.seed, names=names
            )

        if len(fits) == 1:
            (label, fit), = fits.items()
            meta.update(method=label, sigma_eps=fit.sigma_eps, tau=cfg.tau)
            report.add("coefficients", fit_table(fit, names))
            self._add_filter(report, fit.filter_report, names)
        else:
            meta.update(methods=",".join(fits), tau=cfg.tau)
            report.add("coefficients", comparison_table(fits, names))
            labels, matrix = pairwise_distances(fits, X)
            report.add("squared norm distances", distance_table(labels, matrix))
            three_s = fits.get(Method.THREE_S.value)
            if three_s is not None:
                self._add_filter(report, three_s.filter_report, names)
        return self._emit(cfg, report, cfg.out)

    @staticmethod
    def _add_filter(report: Report, filter_report, names) -> None:
        if filter_report is None:
            return
        summary = filter_summary(filter_report, names)
        report.meta.update(
            flagged_fraction=summary["flagged_fraction"],
            affected_fraction=summary["affected_fraction"],
            switch_off=summary["switch_off"],
        )
        report.extra["filter"] = summary

    def cmd_filter(self, cfg: RunConfig) -> str:
        svc = self._service(cfg)
        frame = svc.read(cfg.input)
        if cfg.response is not None and cfg.response not in frame.columns:
            raise UsageError(f"response column {cfg.response!r} not found")
        columns = [c for c in frame.columns if c != cfg.response]
        result = filter_matrix(frame[columns].to_numpy(dtype=float), cfg.alpha_filter, cfg.xi, names=columns)

        source = Path(cfg.input)
        out = Path(cfg.out) if cfg.out else source.with_name(f"{source.stem}.filtered.csv")
        tails_path = out.with_name(f"{out.stem}.tails.tsv")
        svc.write_filtered(frame, columns, result.flags, out)
        tails = tails_table(result, columns)
        svc.write_table(tails, tails_path)
        LOGGER.info("filtered data written to %s, tail table to %s", out, tails_path)

        summary = filter_summary(result, columns)
        counts = pd.DataFrame(
            {"variable": columns, "flagged": [summary["flagged_per_column"][str(c)] for c in columns]}
        )
        report = Report(
            meta={
                "command": "filter",
                "output": str(out),
                "tails": str(tails_path),
                "flagged_fraction": summary["flagged_fraction"],
                "affected_fraction": summary["affected_fraction"],
                "switch_off": summary["switch_off"],
            },
            extra={"filter": summary},
        )
        report.add("flagged cells", counts)
        return render(report, cfg.fmt)

    def _grid_points(self, cfg: RunConfig) -> list[tuple[Scenario, float, tuple[float, ...]]]:
        points = []
        for scenario in cfg.scenarios:
            if scenario == Scenario.CLEAN:
                points.append((scenario, 0.0, (0.0,)))
                continue
            epsilons = cfg.epsilons or DEFAULT_EPSILONS[scenario]
            k_grid = cfg.k_grid or DEFAULT_K_GRIDS[scenario]
            points.extend((scenario, eps, k_grid) for eps in epsilons)
        return points

    def cmd_simulate(self, cfg: RunConfig) -> str:
        base = ScenarioConfig(
            n=cfg.n_grid[0],
            p=cfg.p,
            p_d=cfg.p_d,
            condition_number=cfg.condition_number,
            beta_radius=cfg.beta_radius,
            sigma_eps=cfg.sigma_eps,
            replicates=cfg.replicates,
            seed=cfg.seed,
            covariate_model=cfg.covariate_model,
            casewise_size=cfg.casewise_size,
            dummy_thresholds=cfg.dummy_thresholds,
        )
        results = []
        for scenario, epsilon, k_grid in self._grid_points(cfg):
            results.extend(run_grid(base, [(scenario, epsilon)], k_grid, cfg.estimators, n_grid=cfg.n_grid))

        report = Report(
            meta={"command": "simulate", "seed": cfg.seed, "replicates": cfg.replicates, "p": cfg.p, "p_d": cfg.p_d}
        )
        report.add("summary", results_frame(results))
        if cfg.fmt.value == "json":
            report.extra["scenarios"] = results_payload(results)
        if cfg.plot_data:
            svc = self._service(cfg)
            svc.write_table(pd.DataFrame(plot_rows(results)), cfg.plot_data)
            LOGGER.info("plot data written to %s", cfg.plot_data)
        return self._emit(cfg, report, cfg.out)
