"""
Date: 18-10-2026
Pointwise differential geometry of a sampled surface in S^3: first and second
fundamental forms, Gauss map, mean curvature, |A|^2 and quadrature weights.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import (
    CAUCHY_SCHWARZ_TOL,
    CMC_FD_FACTOR,
    CMC_TOL,
    DISCRETE_DIMENSION,
    EPS_DEGENERATE,
    IMMERSION_TOL,
)
from ..errors import DegenerateImmersionError
from ..utils.geometry import calculate_cross4, calculate_dot, calculate_orientation
from .immersion import ImmersionGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SurfaceGeometry:
    grid: ImmersionGrid
    metric: np.ndarray
    inverse_metric: np.ndarray
    sqrt_det_g: np.ndarray
    normal: np.ndarray
    second_form: np.ndarray
    mean_curvature: np.ndarray
    A2: np.ndarray
    weights: np.ndarray
    H_mean: float
    H_deviation: float
    cmc_tol: float
    n: int = DISCRETE_DIMENSION
    flipped: bool = False

    @property
    def H_constant(self) -> bool:
        return self.H_deviation <= self.cmc_tol

    @property
    def area(self) -> float:
        return float(self.weights.sum())

    @property
    def umbilicity_gap(self) -> float:
        """Largest pointwise |A|^2 - nH^2; zero exactly on umbilical surfaces."""
        return float(np.max(self.A2 - self.n * self.mean_curvature ** 2))

    @property
    def cauchy_schwarz_min(self) -> float:
        return float(np.min(self.A2 - self.n * self.mean_curvature ** 2))

    def flat(self, values: np.ndarray) -> np.ndarray:
        """Node array (Nu, Nv, ...) to row-major node vector (Nu*Nv, ...)."""
        return values.reshape((self.grid.n_nodes,) + values.shape[2:])


def default_cmc_tol(grid: ImmersionGrid) -> float:
    """
    Supplied (analytic or file) derivatives get the tight tolerance; finite-difference ones
    scale with h^2.

    :param grid: Sampled immersion.
    :return: CMC tolerance.
    """
    if grid.derivative_source != "finite_difference":
        return CMC_TOL
    return max(CMC_TOL, CMC_FD_FACTOR * grid.spacing ** 2)


def compute_surface_geometry(
    grid: ImmersionGrid,
    flip_normal: bool = False,
    cmc_tol: Optional[float] = None
) -> SurfaceGeometry:
    """
    Compute metric, Gauss map and curvatures at every node.

    The normal is oriented so that (phi, phi_u, phi_v, nu) is a positive frame of R^4
    (negated when flip_normal is set); H carries the sign that orientation induces, which
    keeps Delta l_v = -n l_v + nH f_v and Delta f_v = -|A|^2 f_v + nH l_v consistent.

    :param grid: Sampled immersion.
    :param flip_normal: Use the opposite orientation.
    :param cmc_tol: Override for the CMC tolerance.
    :return: SurfaceGeometry.
    """
    g_uu = calculate_dot(grid.phi_u, grid.phi_u)
    g_uv = calculate_dot(grid.phi_u, grid.phi_v)
    g_vv = calculate_dot(grid.phi_v, grid.phi_v)
    det = g_uu * g_vv - g_uv * g_uv

    bad = det <= EPS_DEGENERATE
    if np.any(bad):
        i, j = (int(k) for k in np.argwhere(bad)[0])
        logger.error(f"Degenerate metric at {int(bad.sum())} node(s); first at ({i}, {j})")
        raise DegenerateImmersionError((i, j), float(det[i, j]))

    metric = np.stack([np.stack([g_uu, g_uv], -1), np.stack([g_uv, g_vv], -1)], -2)
    inverse = np.stack([np.stack([g_vv, -g_uv], -1), np.stack([-g_uv, g_uu], -1)], -2) / det[..., None, None]
    sqrt_det = np.sqrt(det)

    normal = calculate_cross4(grid.phi, grid.phi_u, grid.phi_v)
    normal /= np.linalg.norm(normal, axis=-1, keepdims=True)
    if flip_normal:
        normal = -normal

    frame = calculate_orientation(grid.phi, grid.phi_u, grid.phi_v, normal)
    if flip_normal:
        frame = -frame
    misoriented = int(np.sum(frame <= 0.0))
    if misoriented:
        logger.warning(f"Normal orientation inconsistent at {misoriented} node(s) of '{grid.label}'")

    h_uu = calculate_dot(grid.phi_uu, normal)
    h_uv = calculate_dot(grid.phi_uv, normal)
    h_vv = calculate_dot(grid.phi_vv, normal)
    second = np.stack([np.stack([h_uu, h_uv], -1), np.stack([h_uv, h_vv], -1)], -2)

    shape_op = np.einsum("...ab,...bc->...ac", inverse, second)
    H = np.trace(shape_op, axis1=-2, axis2=-1) / DISCRETE_DIMENSION
    A2 = np.einsum("...ab,...ba->...", shape_op, shape_op)

    weights = sqrt_det * grid.hu * grid.hv
    H_mean = float(np.sum(weights * H) / np.sum(weights))
    H_dev = float(np.max(np.abs(H - H_mean)))
    tol = default_cmc_tol(grid) if cmc_tol is None else cmc_tol

    normal_residual = max(
        float(np.max(np.abs(calculate_dot(normal, grid.phi)))),
        float(np.max(np.abs(calculate_dot(normal, grid.phi_u)))),
        float(np.max(np.abs(calculate_dot(normal, grid.phi_v)))),
    )
    if normal_residual > IMMERSION_TOL:
        logger.warning(f"Normal not orthogonal to the frame: residual {normal_residual:.2e}")

    cs_min = float(np.min(A2 - DISCRETE_DIMENSION * H * H))
    if cs_min < -CAUCHY_SCHWARZ_TOL:
        logger.warning(f"Cauchy-Schwarz bound |A|^2 >= nH^2 violated by {-cs_min:.2e}")

    if H_dev > tol:
        logger.warning(f"Surface '{grid.label}' is not CMC: max|H - mean H| = {H_dev:.3e} > {tol:.1e}")

    logger.info(
        f"Geometry of '{grid.label}' {grid.n_u}x{grid.n_v}: mean H = {H_mean:.6g}, "
        f"area = {weights.sum():.6g}, deviation = {H_dev:.2e}"
    )

    return SurfaceGeometry(
        grid=grid,
        metric=metric,
        inverse_metric=inverse,
        sqrt_det_g=sqrt_det,
        normal=normal,
        second_form=second,
        mean_curvature=H,
        A2=A2,
        weights=weights,
        H_mean=H_mean,
        H_deviation=H_dev,
        cmc_tol=tol,
        flipped=flip_normal,
    )
