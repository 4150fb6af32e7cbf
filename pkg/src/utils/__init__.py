"""
Date: 18-10-2026
Initialization info for utils module.
"""

from .geometry import (
    calculate_dot, calculate_cross4, calculate_orientation,
    periodic_first_difference, periodic_second_difference, periodic_mixed_difference
)
from .misc import format_float, parse_float_list, to_plain, dumps_report
