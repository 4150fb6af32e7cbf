"""
Date: 18-10-2026
Initialization info for spectrum module.
"""

from .exact import (
    harmonic_multiplicity, clifford_spectrum_exact, umbilical_spectrum_exact,
    weak_index_exact, simons_check, index_window, EQUATOR_FLAG
)
from .jacobi import (
    JacobiForm, assemble_jacobi, discrete_spectrum, laplacian_eigenvalues, lowest_eigenvalues
)
from .inertia import (
    Inertia, inertia, mean_zero_restriction,
    weak_index_discrete, strong_index_discrete, index_discrete
)
