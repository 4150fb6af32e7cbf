"""
Date: 18-10-2026
Initialization info for testfn module.
"""

from .support import SupportFunctions, coefficient_c, build_support_functions
from .residuals import lemma1_residual, jacobi_expansion_residual
from .certificate import (
    quadratic_form, mean_functional, admissible_basis,
    support_independence_margin, theorem_certificate, CLIFFORD_FLAG, MINIMAL_FLAG
)
