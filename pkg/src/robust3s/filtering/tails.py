"""
Estimadores de cola para el filtro univariante consistente.
Cuantil empírico sin interpolación, escalas de cola (mediana de excesos) y proporción
marcada d_hat frente a la referencia exponencial F0(t) = 1 - exp(-log(2) t).
"""
from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import EmptySampleError, FilterConsistencyError
from .model import Side, TailEstimates, TailFlagResult

LOGGER = logging.getLogger(__name__)

LOG2 = math.log(2.0)
# La referencia estandarizada tiene tasa log(2); el supremo se toma en t >= T0
T0 = 1.0 / LOG2

DEFAULT_ALPHA = 0.20

# Holgura para que n*a entero no se desplace al siguiente estadístico de orden
_INDEX_EPS = 1e-9
# Tolerancia de redondeo al comparar F_hat con 1 - d_hat
_ECDF_TOL = 1e-12


def _order_index(n: int, a: float) -> int:
    """Índice (base 1) de ceil(n*a), acotado a [1, n]."""
    k = math.ceil(n * a - _INDEX_EPS)
    return min(max(k, 1), n)


def _sorted(sample) -> np.ndarray:
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise EmptySampleError()
    return np.sort(x, kind="stable")


def reference_cdf(t):
    """F0(t) = 1 - exp(-log(2) t)."""
    return -np.expm1(-LOG2 * np.asarray(t, dtype=float))


def empirical_quantile(sample, a: float) -> float:
    """Devuelve X_(ceil(n*a)), el cuantil empírico sin interpolación."""
    if not 0.0 < a < 1.0:
        raise ValueError(f"quantile level must lie in (0, 1), got {a}")
    x = _sorted(sample)
    return float(x[_order_index(x.size, a) - 1])


def _median_low(values: np.ndarray) -> float:
    """med({Y_1..Y_m}) = Y_(ceil(m/2)); values ya ordenados."""
    m = values.size
    return float(values[math.ceil(m / 2) - 1])


def tail_estimates(sample, alpha: float = DEFAULT_ALPHA) -> TailEstimates:
    """
    Ubicación y escala de ambas colas.
    Si una cola no tiene puntos estrictamente más allá de eta, su escala queda en 0.
    """
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 0.5), got {alpha}")
    x = _sorted(sample)
    n = x.size

    k_upper = _order_index(n, 1.0 - alpha)
    eta_u = float(x[k_upper - 1])
    exceed = x[x > eta_u] - eta_u
    s_u = _median_low(exceed) if exceed.size else 0.0

    # La mediana de los excesos es G_n^{-1}(1 - alpha/2) - eta cuando la cola tiene floor(n*alpha) puntos
    if exceed.size and exceed.size == n - k_upper:
        s_quantile = float(x[_order_index(n, 1.0 - alpha / 2.0) - 1]) - eta_u
        if s_quantile != s_u:
            raise FilterConsistencyError(
                f"upper tail scale {s_u!r} differs from quantile form {s_quantile!r}"
            )
    elif exceed.size:
        LOGGER.debug("ties at the upper tail quantile; quantile-form check skipped")

    eta_l = float(x[_order_index(n, alpha) - 1])
    shortfall = np.sort(eta_l - x[x < eta_l], kind="stable")
    s_l = _median_low(shortfall) if shortfall.size else 0.0

    return TailEstimates(eta_upper=eta_u, s_upper=s_u, eta_lower=eta_l, s_lower=s_l, alpha=alpha)


def flag_proportion(
    tail_standardized,
    *,
    eta: float = 0.0,
    scale: float = 1.0,
    side: Side = Side.UPPER,
) -> TailFlagResult:
    """
    Calcula d_hat = sup_{t >= T0} {F0(t) - F_hat(t)}+ sobre la cola estandarizada y el umbral t_hat.

    El supremo se alcanza en T0 o en el límite por la izquierda de un salto de la ECDF
    situado por encima de T0. t_hat es el menor salto con F_hat >= 1 - d_hat, con una tolerancia de
    redondeo de _ECDF_TOL; se filtran a lo sumo floor(d_hat*m) puntos y un bloque de empates entra o sale entero.
    """
    z = np.sort(np.asarray(tail_standardized, dtype=float).ravel(), kind="stable")
    m = z.size
    if m == 0:
        return TailFlagResult.empty(side)

    ecdf_t0 = np.searchsorted(z, T0, side="right") / m
    gaps = [float(reference_cdf(T0)) - ecdf_t0]
    jumps = z[z > T0]
    if jumps.size:
        left_limits = np.searchsorted(z, jumps, side="left") / m
        gaps.append(float(np.max(reference_cdf(jumps) - left_limits)))
    d_hat = max(0.0, max(gaps))

    t_hat = float(z[-1])
    if d_hat > 0.0:
        ecdf_at_jumps = np.searchsorted(z, z, side="right") / m
        j = int(np.argmax(ecdf_at_jumps >= 1.0 - d_hat - _ECDF_TOL))
        t_hat = max(float(z[j]), T0)

    n_flagged = int(np.count_nonzero(z > t_hat))
    cutoff = eta + scale * t_hat if side == Side.UPPER else eta - scale * t_hat
    return TailFlagResult(d_hat=d_hat, t_hat=t_hat, cutoff=cutoff, tail_size=m, n_flagged=n_flagged)


def propagation_probability(epsilon: float, p: int) -> float:
    """Probabilidad de que un caso tenga al menos una celda contaminada: 1 - (1 - eps)^p."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    return 1.0 - (1.0 - epsilon) ** p
