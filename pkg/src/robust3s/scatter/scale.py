"""
Escala S generalizada: resuelve (1/n) sum c_k rho(d_i / (c_k s)) = b (1/n) sum c_k en s.
Con todos los k iguales se reduce a la escala S usual.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import optimize

from ..errors import DegenerateDesignError
from .rho import RhoFunction, rho_eval

_BRACKET_LOW = 1e-12
_BRACKET_HIGH = 1e6


def gs_scale(d, c, b: float = 0.5, rho: RhoFunction = RhoFunction()) -> float:
    """
    d: distancias cuadráticas (n,); c: constante c_k de cada caso (n,) o escalar.
    La función objetivo decrece en s, así que la raíz se acota en [1e-12, 1e6] por la escala inicial
    mediana(d / c) y se busca en log(s).
    """
    d = np.asarray(d, dtype=float)
    c = np.broadcast_to(np.asarray(c, dtype=float), d.shape)
    target = b * float(c.sum())

    ratio = d / c
    positive = ratio[ratio > 0]
    if positive.size == 0:
        raise DegenerateDesignError("all distances are zero")
    initial = float(np.median(positive))

    def gap(log_s: float) -> float:
        s = math.exp(log_s)
        return float(np.sum(c * rho_eval(rho, ratio / s))) - target

    lo = math.log(_BRACKET_LOW * initial)
    hi = math.log(_BRACKET_HIGH * initial)
    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo < 0.0:
        raise DegenerateDesignError("more than a fraction 1-b of the cases lie on the fit")
    if g_hi > 0.0:
        raise DegenerateDesignError("scale bracket exhausted")
    if g_lo == 0.0:
        return math.exp(lo)
    log_s = optimize.brentq(gap, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return math.exp(log_s)


def scale_residual(d, c, s: float, b: float = 0.5, rho: RhoFunction = RhoFunction()) -> float:
    """Residuo de la restricción de escala, promediado por n."""
    d = np.asarray(d, dtype=float)
    c = np.broadcast_to(np.asarray(c, dtype=float), d.shape)
    return float(np.mean(c * rho_eval(rho, d / (c * s))) - b * np.mean(c))
