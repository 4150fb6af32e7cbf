"""
Date: 18-10-2026
Visualization package for index sweeps.
"""

from .sweep import plot_index_jump, save_index_jump
