"""
Estimadores disponibles en la simulación, identificados por nombre.
En el diseño mixto 3S y 2S son el algoritmo alternante con el paso continuo correspondiente.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from ..dummy import MixedOptions, alternating_fit
from ..errors import UsageError
from ..regression import Method, fit_method
from .model import Dataset, EstimatorOutput

DEFAULT_ESTIMATORS = ("3S", "2S", "LS")


def _regression(method: Method) -> Callable[[Dataset, object], EstimatorOutput]:
    def run(data: Dataset, seed) -> EstimatorOutput:
        if data.D is not None and method != Method.LS:
            fit = alternating_fit(data.X, data.D, data.y, MixedOptions(method=method, seed=seed))
            return EstimatorOutput(beta=np.concatenate([fit.beta_x, fit.beta_d]))
        fit = fit_method(method, data.design, data.y, seed=seed)
        return EstimatorOutput(beta=fit.beta, ci=fit.ci[1:])

    return run


def _oracle(data: Dataset, seed) -> EstimatorOutput:
    return EstimatorOutput(beta=data.beta.copy())


ESTIMATORS: dict[str, Callable[[Dataset, object], EstimatorOutput]] = {
    "3S": _regression(Method.THREE_S),
    "2S": _regression(Method.TWO_S),
    "LS": _regression(Method.LS),
    "oracle": _oracle,
}


def resolve(names) -> tuple[str, ...]:
    """Normaliza nombres ('3s' -> '3S') y rechaza los desconocidos."""
    out = []
    for name in names:
        key = name if name in ESTIMATORS else str(name).strip().upper()
        if key not in ESTIMATORS:
            raise UsageError(f"unknown estimator {name!r}; choose from {', '.join(ESTIMATORS)}")
        out.append(key)
    if not out:
        raise UsageError("no estimators selected")
    return tuple(out)
