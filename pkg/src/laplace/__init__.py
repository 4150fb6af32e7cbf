"""
Date: 18-10-2026
Initialization info for laplace module.
"""

from .forms import (
    DiscreteForms, assemble_forms, assemble_weighted_mass,
    integrate, apply_laplacian, cell_average, cell_corners
)
from .identities import identity_residuals
