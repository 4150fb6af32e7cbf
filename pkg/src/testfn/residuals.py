"""
Date: 18-10-2026
Residuals of the integral identity
    int |A|^2 f_u l_u = n int f_u l_u - nH int f_u^2 + nH int l_u^2
and of the closed-form expansion
    J(h_u) = -|A|^2 c l_u - n f_u - nH l_u - nHc f_u.
"""

import numpy as np

from ..geometry.surface import SurfaceGeometry
from ..laplace.forms import DiscreteForms, apply_laplacian, integrate
from .support import SupportFunctions


def lemma1_residual(
    geom: SurfaceGeometry,
    forms: DiscreteForms,
    support: SupportFunctions,
    u: np.ndarray
) -> float:
    """
    |LHS - RHS| of the divergence-theorem identity, both sides by quadrature.

    :param geom: Surface geometry.
    :param forms: Assembled forms (kept for a uniform battery signature).
    :param support: Support functions.
    :param u: Ambient vector.
    :return: Absolute residual.
    """
    n, H = support.n, support.H
    f = support.f_u(u)
    l = support.l_u(u)
    A2 = geom.flat(geom.A2)
    lhs = integrate(geom, A2 * f * l)
    rhs = n * integrate(geom, f * l) - n * H * integrate(geom, f * f) + n * H * integrate(geom, l * l)
    return abs(lhs - rhs)


def jacobi_expansion_residual(
    geom: SurfaceGeometry,
    forms: DiscreteForms,
    support: SupportFunctions,
    u: np.ndarray
) -> float:
    """
    Max-norm gap between J(h_u) through the discrete Laplacian and its closed form.

    :param geom: Surface geometry.
    :param forms: Assembled forms.
    :param support: Support functions.
    :param u: Ambient vector.
    :return: Max residual over nodes.
    """
    n, H, c = support.n, support.H, support.c
    f = support.f_u(u)
    l = support.l_u(u)
    h = f + c * l
    A2 = geom.flat(geom.A2)

    discrete = -apply_laplacian(forms, h) - (A2 + n) * h
    closed = -A2 * c * l - n * f - n * H * l - n * H * c * f
    return float(np.max(np.abs(discrete - closed)))
