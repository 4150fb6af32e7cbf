"""
Date: 18-10-2026
Initialization info for geometry module.
"""

from .immersion import ImmersionGrid, coarsen_grid, grid_from_positions, validate_immersion
from .families import (
    clifford_scalars, umbilical_scalars, rotational_torus,
    clifford_immersion, control_immersion
)
from .surface import SurfaceGeometry, compute_surface_geometry, default_cmc_tol
