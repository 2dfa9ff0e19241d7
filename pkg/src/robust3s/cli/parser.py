"""
Parser de la línea de comandos: subcomandos fit, filter y simulate.
Precedencia: valores por defecto < fichero --config (clave=valor) < opciones explícitas.
"""
from __future__ import annotations

import argparse
from pathlib import Path

from ..errors import UsageError
from ..services import OutputFormat
from ..simulation import CovariateModel, Scenario
from ..simulation.estimators import resolve
from ..simulation.io import parse_key_values
from ..simulation.seeding import fresh_seed
from .model import ALTERNATING, FIT_METHODS, Command, RunConfig

# Claves de fichero que no coinciden con el nombre de la opción
_CONFIG_ALIASES = {
    "k": "k_grid",
    "alpha_filter": "alpha",
    "n_grid": "n",
    "fmt": "format",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _split(value: str) -> list[str]:
    return [part.strip() for part in str(value).split(",") if part.strip()]


def _float_list(value: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in _split(value))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {value!r}") from None


def _int_list(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in _split(value))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {value!r}") from None


def _grid(value: str) -> tuple[float, ...]:
    """'1:10' (inclusivo, paso 1), '1:15:2' o lista separada por comas."""
    text = str(value).strip()
    if ":" in text:
        try:
            parts = [float(v) for v in text.split(":")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid range {value!r}") from None
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
            raise argparse.ArgumentTypeError(f"invalid range {value!r}")
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1.0
        count = int((stop - start) / step + 1e-9) + 1
        return tuple(start + i * step for i in range(max(count, 0)))
    return _float_list(text)


def _optional_float(value: str) -> float | None:
    if str(value).strip().lower() in ("", "none"):
        return None
    return float(value)


def _shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="fichero clave=valor con valores por defecto")
    parser.add_argument("--seed", type=int, default=None, help="semilla (por defecto, entropía del sistema)")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TABLE.value)
    parser.add_argument("--out", default=None)
    parser.add_argument("-v", "--verbose", action="count", default=0)


def _filter_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input")
    parser.add_argument("--response", default=None)
    parser.add_argument("--alpha", type=float, default=0.20)
    parser.add_argument("--xi", type=float, default=0.01)
    parser.add_argument("--sentinel", default="NA")


class ArgumentsParser:
    """Construye el RunConfig a partir de argv."""

    def __init__(self) -> None:
        self._parser = _Parser(prog="robust3s", description="Regresión robusta 3S frente a outliers por celdas y por casos.")
        subparsers = self._parser.add_subparsers(dest="command", required=True)
        self._subparsers: dict[str, argparse.ArgumentParser] = {}

        fit = subparsers.add_parser(Command.FIT.value, help="ajusta modelos desde un CSV")
        _shared(fit)
        _filter_options(fit)
        fit.add_argument("--dummies", default=None, help="'auto' o lista de columnas")
        fit.add_argument("--method", default="3s", help="3s, 2s, ls, alternating o lista separada por comas")
        fit.add_argument("--tau", type=float, default=0.05)
        self._subparsers[Command.FIT.value] = fit

        flt = subparsers.add_parser(Command.FILTER.value, help="aplica solo el filtro por celdas")
        _shared(flt)
        _filter_options(flt)
        self._subparsers[Command.FILTER.value] = flt

        sim = subparsers.add_parser(Command.SIMULATE.value, help="ejecuta escenarios Monte Carlo")
        _shared(sim)
        sim.add_argument("--scenario", default="clean,cellwise,casewise")
        sim.add_argument("--epsilon", type=_float_list, default=None)
        sim.add_argument("--k-grid", type=_grid, default=None)
        sim.add_argument("--n", type=_int_list, default=(300,))
        sim.add_argument("--p", type=int, default=15)
        sim.add_argument("--p-d", type=int, default=0)
        sim.add_argument("--replicates", type=int, default=200)
        sim.add_argument("--estimators", default="3s,2s,ls")
        sim.add_argument("--covariate-model", choices=[m.value for m in CovariateModel], default="normal")
        sim.add_argument("--condition-number", type=float, default=100.0)
        sim.add_argument("--beta-radius", type=float, default=10.0)
        sim.add_argument("--sigma-eps", type=float, default=0.5)
        sim.add_argument("--casewise-size", type=_optional_float, default=None)
        sim.add_argument("--dummy-thresholds", type=_float_list, default=(1 / 4, 1 / 3, 1 / 2))
        sim.add_argument("--plot-data", default=None)
        self._subparsers[Command.SIMULATE.value] = sim

    def _apply_config(self, argv: list[str]) -> None:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if not known.config:
            return
        command = next((a for a in argv if a in self._subparsers), None)
        if command is None:
            return
        path = Path(known.config)
        if not path.exists():
            raise UsageError(f"config file {path} does not exist")
        sub = self._subparsers[command]
        dests = {a.dest for a in sub._actions}
        values = {}
        for key, value in parse_key_values(path.read_text(encoding="utf-8"), str(path)).items():
            dest = _CONFIG_ALIASES.get(key, key)
            if dest not in dests or dest in ("config", "help"):
                raise UsageError(f"{path}: unknown key {key!r} for command {command}")
            values[dest] = int(value) if dest == "verbose" else value
        sub.set_defaults(**values)

    def parse(self, argv: list[str]) -> RunConfig:
        argv = list(argv)
        self._apply_config(argv)
        ns = self._parser.parse_args(argv)
        command = Command(ns.command)

        seed_generated = ns.seed is None
        seed = fresh_seed() if seed_generated else int(ns.seed)
        if seed < 0:
            raise UsageError("seed must be non-negative")
        try:
            fmt = OutputFormat(ns.format)
        except ValueError:
            raise UsageError(f"unknown format {ns.format!r}") from None
        common = dict(
            command=command,
            seed=seed,
            seed_generated=seed_generated,
            fmt=fmt,
            out=ns.out,
            verbose=int(ns.verbose),
        )
        if command == Command.SIMULATE:
            return self._simulate_config(ns, common)

        if not ns.input:
            raise UsageError("--input is required")
        if not 0.0 < ns.alpha < 0.5:
            raise UsageError(f"--alpha must lie in (0, 0.5), got {ns.alpha}")
        if not 0.0 <= ns.xi < 1.0:
            raise UsageError(f"--xi must lie in [0, 1), got {ns.xi}")
        common.update(input=ns.input, response=ns.response, alpha_filter=ns.alpha, xi=ns.xi, sentinel=ns.sentinel)
        if command == Command.FILTER:
            return RunConfig(**common)

        if not ns.response:
            raise UsageError("--response is required for fit")
        if not 0.0 < ns.tau < 1.0:
            raise UsageError(f"--tau must lie in (0, 1), got {ns.tau}")
        methods = tuple(m.lower() for m in _split(ns.method))
        unknown = [m for m in methods if m not in FIT_METHODS]
        if not methods or unknown:
            raise UsageError(f"unknown method {', '.join(unknown) or ns.method!r}; choose from {', '.join(FIT_METHODS)}")
        if ALTERNATING in methods and len(methods) > 1:
            raise UsageError("the alternating method cannot be combined with other methods")
        dummies = None
        if ns.dummies:
            dummies = "auto" if ns.dummies.strip().lower() == "auto" else tuple(_split(ns.dummies))
        return RunConfig(**common, dummies=dummies, methods=methods, tau=ns.tau)

    def _simulate_config(self, ns, common: dict) -> RunConfig:
        try:
            scenarios = tuple(Scenario(s.lower()) for s in _split(ns.scenario))
        except ValueError:
            raise UsageError(f"unknown scenario in {ns.scenario!r}; choose from clean, cellwise, casewise") from None
        if not scenarios:
            raise UsageError("no scenarios selected")
        if ns.k_grid is not None and (not ns.k_grid or min(ns.k_grid) < 0):
            raise UsageError("the k grid must be a non-empty list of non-negative values")
        if ns.epsilon is not None and not ns.epsilon:
            raise UsageError("empty epsilon list")
        if not ns.n or min(ns.n) < 2:
            raise UsageError("sample sizes must be >= 2")
        try:
            covariate_model = CovariateModel(ns.covariate_model)
        except ValueError:
            raise UsageError(f"unknown covariate model {ns.covariate_model!r}") from None
        return RunConfig(
            **common,
            scenarios=scenarios,
            epsilons=ns.epsilon,
            k_grid=ns.k_grid,
            n_grid=tuple(ns.n),
            p=ns.p,
            p_d=ns.p_d,
            replicates=ns.replicates,
            estimators=resolve(_split(ns.estimators)),
            covariate_model=covariate_model,
            condition_number=ns.condition_number,
            beta_radius=ns.beta_radius,
            sigma_eps=ns.sigma_eps,
            casewise_size=ns.casewise_size,
            dummy_thresholds=tuple(ns.dummy_thresholds),
            plot_data=ns.plot_data,
        )
