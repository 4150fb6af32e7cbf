"""
Date: 18-10-2026
Support functions l_v = <phi, v>, f_v = <nu, v> along the ambient basis, and the test
functions h_u = f_u + c l_u with c = (sqrt(1 + H^2) - 1) / H.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..config import EXACT_ZERO_TOL
from ..geometry.surface import SurfaceGeometry

logger = logging.getLogger(__name__)


def coefficient_c(H: float) -> float:
    """
    (sqrt(1 + H^2) - 1) / H in the cancellation-free form H / (sqrt(1 + H^2) + 1).
    Continuous at H = 0, where it vanishes; odd in H; |c| < 1.

    :param H: Mean curvature.
    :return: Coefficient c.
    """
    return H / (math.sqrt(1.0 + H * H) + 1.0)


@dataclass(frozen=True, slots=True)
class SupportFunctions:
    l: np.ndarray
    f: np.ndarray
    H: float
    c: float
    n: int
    warnings: List[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.l.shape[0]

    def l_u(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(u, dtype=float) @ self.l

    def f_u(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(u, dtype=float) @ self.f

    def h(self, u: np.ndarray) -> np.ndarray:
        return self.f_u(u) + self.c * self.l_u(u)

    @property
    def h_basis(self) -> np.ndarray:
        """h_alpha for every ambient basis vector, shape (n+2, N)."""
        return self.f + self.c * self.l


def build_support_functions(geom: SurfaceGeometry) -> SupportFunctions:
    """
    Evaluate l_alpha and f_alpha at every node; H is the area-weighted mean curvature,
    snapped to 0 when it is roundoff.

    :param geom: Surface geometry.
    :return: SupportFunctions.
    """
    warnings = []
    if not geom.H_constant:
        message = f"surface is not CMC: max|H - mean H| = {geom.H_deviation:.3e} > {geom.cmc_tol:.1e}"
        logger.warning(f"Support functions on non-CMC input, {message}")
        warnings.append(message)

    H = geom.H_mean if abs(geom.H_mean) > EXACT_ZERO_TOL else 0.0
    return SupportFunctions(
        l=np.ascontiguousarray(geom.flat(geom.grid.phi).T),
        f=np.ascontiguousarray(geom.flat(geom.normal).T),
        H=H,
        c=coefficient_c(H),
        n=geom.n,
        warnings=warnings,
    )
