"""
Coeficientes por sustitución: beta = S_xx^{-1} S_xy, alpha = m_y - m_x' beta.
"""
from __future__ import annotations

import numpy as np

from ..errors import NumericalError
from ..scatter import LocationScatter
from ..scatter.distances import check_condition
from .model import PartitionedMoments


def partition_moments(location_scatter: LocationScatter | None = None, *, m=None, S=None) -> PartitionedMoments:
    """Parte (m, S) en bloques x / y; la respuesta es la última coordenada."""
    if location_scatter is not None:
        m, S = location_scatter.m, location_scatter.S
    m = np.asarray(m, dtype=float)
    S = np.asarray(S, dtype=float)
    return PartitionedMoments(
        m_x=m[:-1].copy(),
        m_y=float(m[-1]),
        S_xx=S[:-1, :-1].copy(),
        S_xy=S[:-1, -1].copy(),
        S_yy=float(S[-1, -1]),
    )


def plug_in_coefficients(moments: PartitionedMoments) -> tuple[float, np.ndarray]:
    if moments.p == 0:
        return moments.m_y, np.zeros(0)
    check_condition(moments.S_xx, "covariate scatter S_xx")
    beta = np.linalg.solve(moments.S_xx, moments.S_xy)
    alpha = moments.m_y - float(moments.m_x @ beta)
    return alpha, beta


def residual_scale(moments: PartitionedMoments, beta: np.ndarray) -> float:
    """sigma_eps = sqrt(S_yy - beta' S_xx beta); error si el radicando no es positivo."""
    var = moments.S_yy - float(beta @ moments.S_xx @ beta)
    if not var > 0.0:
        raise NumericalError(f"non-positive residual variance {var:.3g}")
    return float(np.sqrt(var))
