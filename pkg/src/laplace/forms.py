"""
Date: 18-10-2026
Bilinear finite elements on the periodic parameter rectangle.
The metric is frozen per cell (average of the four corners); element integrals are exact
for the frozen coefficient, so the stiffness is symmetric, positive semidefinite and
annihilates constants.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from ..config import EPS_DEGENERATE
from ..errors import DegenerateImmersionError
from ..geometry.surface import SurfaceGeometry

logger = logging.getLogger(__name__)

GRADIENT_MASS = np.array([[-0.5, -0.5], [0.5, 0.5]])


@dataclass(frozen=True, slots=True)
class DiscreteForms:
    stiffness: sparse.csr_matrix
    mass: sparse.csr_matrix
    gram: sparse.csr_matrix
    weights: np.ndarray
    shape: Tuple[int, int]

    @property
    def size(self) -> int:
        return self.weights.size


def _line_stiffness(h: float) -> np.ndarray:
    return np.array([[1.0, -1.0], [-1.0, 1.0]]) / h


def _line_mass(h: float) -> np.ndarray:
    return np.array([[2.0, 1.0], [1.0, 2.0]]) * h / 6.0


def cell_corners(n_u: int, n_v: int) -> np.ndarray:
    """
    Node indices of each cell, local order (i,j), (i,j+1), (i+1,j), (i+1,j+1).

    :param n_u: Nodes in u.
    :param n_v: Nodes in v.
    :return: Integer array (Nu*Nv, 4).
    """
    i = np.arange(n_u)[:, None]
    j = np.arange(n_v)[None, :]
    ip = (i + 1) % n_u
    jp = (j + 1) % n_v
    corners = np.stack(
        np.broadcast_arrays(i * n_v + j, i * n_v + jp, ip * n_v + j, ip * n_v + jp), axis=-1
    )
    return corners.reshape(-1, 4)


def cell_average(values: np.ndarray) -> np.ndarray:
    """
    Average of node data over the four corners of each periodic cell.

    :param values: Node array (Nu, Nv, ...).
    :return: Cell array (Nu, Nv, ...).
    """
    up = np.roll(values, -1, axis=0)
    return 0.25 * (values + up + np.roll(values, -1, axis=1) + np.roll(up, -1, axis=1))


def _scatter(corners: np.ndarray, local: np.ndarray, size: int) -> sparse.csr_matrix:
    rows = np.repeat(corners, 4, axis=1)
    cols = np.tile(corners, (1, 4))
    matrix = sparse.coo_matrix(
        (local.reshape(-1), (rows.ravel(), cols.ravel())), shape=(size, size)
    ).tocsr()
    return ((matrix + matrix.T) * 0.5).tocsr()


def _cell_metric(geom: SurfaceGeometry) -> Tuple[np.ndarray, np.ndarray]:
    g = cell_average(geom.metric)
    det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] ** 2
    bad = det <= EPS_DEGENERATE
    if np.any(bad):
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise DegenerateImmersionError((i, j), float(det[i, j]))
    return g, det


def assemble_weighted_mass(
    geom: SurfaceGeometry,
    coefficient: Optional[np.ndarray] = None
) -> sparse.csr_matrix:
    """
    Consistent mass matrix int c phi_i phi_j dA with metric and coefficient frozen per cell.

    :param geom: Surface geometry.
    :param coefficient: Optional node coefficient (Nu, Nv); 1 when omitted.
    :return: Symmetric sparse matrix.
    """
    grid = geom.grid
    _, det = _cell_metric(geom)
    density = np.sqrt(det)
    if coefficient is not None:
        density = density * cell_average(coefficient)
    element = np.kron(_line_mass(grid.hu), _line_mass(grid.hv))
    local = density.reshape(-1)[:, None, None] * element[None]
    return _scatter(cell_corners(grid.n_u, grid.n_v), local, grid.n_nodes)


def assemble_forms(geom: SurfaceGeometry) -> DiscreteForms:
    """
    Assemble the Dirichlet-energy stiffness, lumped mass and consistent mass.

    :param geom: Surface geometry.
    :return: DiscreteForms.
    """
    grid = geom.grid
    g, det = _cell_metric(geom)
    sqrt_det = np.sqrt(det)
    c_uu = sqrt_det * g[..., 1, 1] / det
    c_vv = sqrt_det * g[..., 0, 0] / det
    c_uv = -sqrt_det * g[..., 0, 1] / det

    s_u, s_v = _line_stiffness(grid.hu), _line_stiffness(grid.hv)
    m_u, m_v = _line_mass(grid.hu), _line_mass(grid.hv)
    cross = np.kron(GRADIENT_MASS, GRADIENT_MASS.T)
    k_uu = np.kron(s_u, m_v)
    k_vv = np.kron(m_u, s_v)
    k_uv = cross + cross.T

    local = (
        c_uu.reshape(-1)[:, None, None] * k_uu[None]
        + c_vv.reshape(-1)[:, None, None] * k_vv[None]
        + c_uv.reshape(-1)[:, None, None] * k_uv[None]
    )
    corners = cell_corners(grid.n_u, grid.n_v)
    stiffness = _scatter(corners, local, grid.n_nodes)

    row_sum = float(np.max(np.abs(stiffness @ np.ones(grid.n_nodes))))
    if row_sum > 1e-12 * max(1.0, float(np.max(np.abs(stiffness.diagonal())))):
        logger.warning(f"Stiffness row sums not zero: {row_sum:.2e}")

    weights = geom.flat(geom.weights).copy()
    forms = DiscreteForms(
        stiffness=stiffness,
        mass=sparse.diags(weights).tocsr(),
        gram=assemble_weighted_mass(geom),
        weights=weights,
        shape=(grid.n_u, grid.n_v),
    )
    logger.info(f"Assembled forms on {grid.n_u}x{grid.n_v} grid ({stiffness.nnz} stiffness entries)")
    return forms


def integrate(geom: SurfaceGeometry, f: np.ndarray) -> float:
    """
    Periodic trapezoid rule sum_i w_i f_i.

    :param geom: Surface geometry (supplies the weights).
    :param f: Node values, (Nu, Nv) or flattened.
    :return: Integral.
    """
    return float(np.dot(geom.weights.ravel(), np.ravel(f)))


def apply_laplacian(forms: DiscreteForms, f: np.ndarray) -> np.ndarray:
    """
    Discrete Laplace-Beltrami operator -M^{-1} K f (lumped M), geometer's sign.

    :param forms: Assembled forms.
    :param f: Node values, (Nu, Nv) or flattened.
    :return: Node values shaped like f.
    """
    values = np.asarray(f, dtype=float)
    out = -(forms.stiffness @ values.ravel()) / forms.weights
    return out.reshape(values.shape)
