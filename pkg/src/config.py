"""
Date: 18-10-2026
Configuration parameters and constants for the CMC index toolkit.
Every tolerance the reports echo has its default here; the CLI exposes each as a flag.
"""

import math

TWO_PI = 2.0 * math.pi

# Geometry
EPS_DEGENERATE = 1e-12
CMC_TOL = 1e-8
CMC_FD_FACTOR = 0.1
IMMERSION_TOL = 1e-9
CAUCHY_SCHWARZ_TOL = 1e-9
DISCRETE_DIMENSION = 2
AMBIENT_DIMENSION = 4

CONTROL_R0_SQUARED = 0.5
CONTROL_AMPLITUDE = 0.1

# Discretization
DEFAULT_GRID = 48
CONVERGENCE_GRID = 64
MIN_GRID = 4
POTENTIAL_QUADRATURE = "consistent"

# Index counting
DEFAULT_TAU_EXACT = 0.0
DEFAULT_TAU_DISCRETE = 1e-3
DEFAULT_WINDOW = 0.0
EXACT_ZERO_TOL = 1e-10
ZERO_PIVOT_TOL = 1e-13
DISCRETE_EIGEN_COUNT = 10
INDEX_WINDOW_MARGIN = 1.0
DENSE_EIGEN_LIMIT = 600

# Proof machinery
TAU_STRICT_FACTOR = 1e-6
TAU_ADM_FACTOR = 1e-8
SLACK_FACTOR = 1e-4
UMBILIC_TOL = 1e-8
INDEPENDENCE_TOL = 1e-8

# Verification thresholds
IDENTITY_TOL = 5e-3
LEMMA_TOL = 1e-6
EXPANSION_TOL = 5e-3
CONVERGENCE_RATIO_MIN = 3.5
CONVERGENCE_RATIO_MAX = 4.5
STALL_RATIO = 1.1
# difference-derived samples: residual tolerances scale as VERIFY_FD_FACTOR * h^2 (x area for integrals)
VERIFY_FD_FACTOR = 2.0

# Reporting
FLOAT_FORMAT = "%.17g"
SAMPLE_HEADER_FIELDS = 5
SAMPLE_POSITION_COLUMNS = 6
SAMPLE_FULL_COLUMNS = 26
