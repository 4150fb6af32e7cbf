"""
Date: 18-10-2026
Residuals of the support-function Laplacian identities
    Delta l_v = -n l_v + nH f_v,    Delta f_v = -|A|^2 f_v + nH l_v.
"""

import logging
from typing import Tuple

import numpy as np

from ..geometry.surface import SurfaceGeometry
from .forms import DiscreteForms, apply_laplacian

logger = logging.getLogger(__name__)


def identity_residuals(
    geom: SurfaceGeometry,
    forms: DiscreteForms,
    v: np.ndarray
) -> Tuple[float, float]:
    """
    Max-norm residuals of both identities for the ambient direction v, with H the mean curvature
    averaged over the surface.

    :param geom: Surface geometry.
    :param forms: Assembled forms.
    :param v: Ambient vector in R^4.
    :return: Tuple (r1, r2).
    """
    if not geom.H_constant:
        logger.warning(
            f"Identity residuals on non-CMC input (deviation {geom.H_deviation:.2e}) "
            f"measure CMC failure, not discretization error"
        )
    v = np.asarray(v, dtype=float)
    n, H = geom.n, geom.H_mean
    l = geom.flat(geom.grid.phi) @ v
    f = geom.flat(geom.normal) @ v
    A2 = geom.flat(geom.A2)

    r1 = np.max(np.abs(apply_laplacian(forms, l) + n * l - n * H * f))
    r2 = np.max(np.abs(apply_laplacian(forms, f) + A2 * f - n * H * l))
    return float(r1), float(r2)
