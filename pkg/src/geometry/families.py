"""
Date: 18-10-2026
Closed-form hypersurface families of S^{n+1} and the built-in sampled tori of S^3.
"""

import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from ..config import CONTROL_AMPLITUDE, CONTROL_R0_SQUARED, TWO_PI
from ..errors import UnsupportedFamilyError
from ..schema import CliffordSpec, UmbilicalSpec
from .immersion import ImmersionGrid

logger = logging.getLogger(__name__)

Profile = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def clifford_scalars(spec: CliffordSpec) -> Tuple[float, float, List[Tuple[float, int]]]:
    """
    Mean curvature, |A|^2 and principal curvatures of S^p(r) x S^q(s).

    :param spec: Clifford parameters.
    :return: Tuple (H, A2, [(curvature, multiplicity), ...]).
    """
    r, s, p, q = spec.r, spec.s, spec.p, spec.q
    H = (p * s / r - q * r / s) / spec.n
    A2 = p * s * s / (r * r) + q * r * r / (s * s)
    return H, A2, [(s / r, p), (-r / s, q)]


def umbilical_scalars(spec: UmbilicalSpec) -> Tuple[float, float]:
    """
    Mean curvature and |A|^2 of a geodesic sphere; the Cauchy-Schwarz bound is an equality.

    :param spec: Umbilical parameters.
    :return: Tuple (H, A2).
    """
    H = spec.c / spec.rho
    return H, spec.n * H * H


def rotational_torus(
    profile: Callable[[np.ndarray], Profile],
    n_u: int,
    n_v: int,
    label: str
) -> ImmersionGrid:
    """
    Sample phi(u, v) = (R(u) cos u, R(u) sin u, S(u) cos v, S(u) sin v) with R^2 + S^2 = 1.

    :param profile: Maps u to (R, R', R'', S, S', S'').
    :param n_u: Nodes in u.
    :param n_v: Nodes in v.
    :param label: Family tag.
    :return: ImmersionGrid with analytic derivatives.
    """
    u = np.arange(n_u) * TWO_PI / n_u
    v = np.arange(n_v) * TWO_PI / n_v
    R, dR, d2R, S, dS, d2S = (np.asarray(a, dtype=float)[:, None] for a in profile(u))
    U, V = np.meshgrid(u, v, indexing="ij")
    cu, su = np.cos(U), np.sin(U)
    cv, sv = np.cos(V), np.sin(V)
    zero = np.zeros_like(U)

    phi = np.stack([R * cu, R * su, S * cv, S * sv], axis=-1)
    phi_u = np.stack([dR * cu - R * su, dR * su + R * cu, dS * cv, dS * sv], axis=-1)
    phi_v = np.stack([zero, zero, -S * sv, S * cv], axis=-1)
    phi_uu = np.stack([
        d2R * cu - 2.0 * dR * su - R * cu,
        d2R * su + 2.0 * dR * cu - R * su,
        d2S * cv,
        d2S * sv,
    ], axis=-1)
    phi_uv = np.stack([zero, zero, -dS * sv, dS * cv], axis=-1)
    phi_vv = np.stack([zero, zero, -S * cv, -S * sv], axis=-1)

    return ImmersionGrid(
        phi=phi, phi_u=phi_u, phi_v=phi_v,
        phi_uu=phi_uu, phi_uv=phi_uv, phi_vv=phi_vv,
        lu=TWO_PI, lv=TWO_PI, derivative_source="analytic", label=label,
    )


def clifford_immersion(spec: CliffordSpec, n_u: int, n_v: int) -> ImmersionGrid:
    """
    Sample the Clifford torus S^1(r) x S^1(s) with exact derivatives.

    :param spec: Clifford parameters; only p = q = 1 is a surface in S^3.
    :param n_u: Nodes in u.
    :param n_v: Nodes in v.
    :return: ImmersionGrid.
    """
    if spec.p != 1 or spec.q != 1:
        raise UnsupportedFamilyError(
            f"The discrete pipeline handles surfaces in S^3 only (p = q = 1), got p={spec.p}, q={spec.q}"
        )
    r, s = spec.r, spec.s

    def profile(u: np.ndarray) -> Profile:
        zero = np.zeros_like(u)
        return np.full_like(u, r), zero, zero, np.full_like(u, s), zero, zero

    logger.info(f"Sampling Clifford torus r^2={spec.r2:.6g} on {n_u}x{n_v} grid")
    return rotational_torus(profile, n_u, n_v, label="clifford")


def control_immersion(
    n_u: int,
    n_v: int,
    r0_squared: float = CONTROL_R0_SQUARED,
    amplitude: float = CONTROL_AMPLITUDE
) -> ImmersionGrid:
    """
    Non-CMC negative control: Clifford torus with radius r0 (1 + amplitude cos u),
    renormalized onto S^3.

    :param n_u: Nodes in u.
    :param n_v: Nodes in v.
    :param r0_squared: Base radius squared.
    :param amplitude: Relative modulation of the radius.
    :return: ImmersionGrid with analytic derivatives.
    """
    r0 = math.sqrt(r0_squared)
    s0 = math.sqrt(1.0 - r0_squared)

    def profile(u: np.ndarray) -> Profile:
        rho = r0 * (1.0 + amplitude * np.cos(u))
        drho = -r0 * amplitude * np.sin(u)
        d2rho = -r0 * amplitude * np.cos(u)
        q = rho * rho + s0 * s0
        R = rho / np.sqrt(q)
        dR = s0 * s0 * drho * q ** -1.5
        d2R = s0 * s0 * q ** -2.5 * (d2rho * q - 3.0 * rho * drho * drho)
        S = s0 / np.sqrt(q)
        dS = -s0 * rho * drho * q ** -1.5
        d2S = -s0 * q ** -2.5 * ((drho * drho + rho * d2rho) * q - 3.0 * rho * rho * drho * drho)
        return R, dR, d2R, S, dS, d2S

    logger.info(f"Sampling non-CMC control torus (r0^2={r0_squared}, amplitude={amplitude}) on {n_u}x{n_v} grid")
    return rotational_torus(profile, n_u, n_v, label="control-noncmc")
