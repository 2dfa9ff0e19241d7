"""
Constantes de consistencia c_k: E[rho(chi2_k / c_k)] = b bajo el modelo normal.
Para la bisquare y la Huber truncada la esperanza tiene forma cerrada en términos de
funciones de distribución chi-cuadrado con grados de libertad desplazados.
"""
from __future__ import annotations

from functools import lru_cache

from scipy import optimize, stats

from .rho import SQRT2, RhoKind

_UPPER_START = 1e3


def expected_rho(c: float, k: int, kind: RhoKind = RhoKind.BISQUARE) -> float:
    """E[rho(X / c)] con X ~ chi2_k."""
    kind = RhoKind(kind)
    if kind == RhoKind.BISQUARE:
        # rho_B(t) = 3t - 3t^2 + t^3 en [0, 1); E[X^r 1{X <= c}] = k(k+2)...(k+2r-2) F_{k+2r}(c)
        tail = stats.chi2.sf(c, k)
        body = (
            3.0 * k * stats.chi2.cdf(c, k + 2) / c
            - 3.0 * k * (k + 2) * stats.chi2.cdf(c, k + 4) / c**2
            + k * (k + 2) * (k + 4) * stats.chi2.cdf(c, k + 6) / c**3
        )
        return float(tail + body)
    cut = c * SQRT2
    return float(stats.chi2.sf(cut, k) + k * (k + 2) * stats.chi2.cdf(cut, k + 4) / (2.0 * c**2))


@lru_cache(maxsize=256)
def consistency_constant(k: int, b: float = 0.5, kind: RhoKind = RhoKind.BISQUARE) -> float:
    """
    c_k tal que E[rho(chi2_k / c_k)] = b. Crece con k y con 1/b.
    La esperanza se evalúa en forma cerrada con la chi-cuadrado, equivalente a integrar numéricamente.
    """
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    if not 0.0 < b < 1.0:
        raise ValueError(f"b must lie in (0, 1), got {b}")
    kind = RhoKind(kind)

    def gap(c: float) -> float:
        return expected_rho(c, k, kind) - b

    lo, hi = 1e-8, _UPPER_START * (k + 1)
    while gap(hi) > 0.0:
        hi *= 10.0
    return float(optimize.brentq(gap, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500))
