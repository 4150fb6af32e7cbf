"""
Date: 18-10-2026
Domain exceptions. All derive from ValueError so callers that only guard
against bad input keep working.
"""


class DegenerateImmersionError(ValueError):
    """
    Raised when the induced metric is (numerically) singular at a node.
    """
    def __init__(self, node, det_g: float):
        self.node = node
        self.det_g = det_g
        super().__init__(f"Degenerate immersion at node {node}: det g = {det_g:.3e}")


class UnsupportedFamilyError(ValueError):
    """Family or report source the requested path cannot handle."""


class TheoremHypothesisError(ValueError):
    """
    Raised when the surface is totally umbilical; the index bound does not apply there.
    """
    def __init__(self, umbilicity_gap: float):
        self.umbilicity_gap = umbilicity_gap
        super().__init__(
            f"Theorem hypothesis not met: surface is totally umbilical "
            f"(max(|A|^2 - nH^2) = {umbilicity_gap:.3e}); its weak index is 0."
        )


class NotMinimalError(ValueError):
    """Simons' bound is only stated for minimal hypersurfaces."""


class ImmersionFileError(ValueError):
    """Malformed immersion sample file."""
