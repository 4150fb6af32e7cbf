"""
Shared fixtures. Analyzers are cached per (family, r2, grid, orientation) for the session.
"""

from functools import lru_cache

import pytest

from src.analyzer import SurfaceAnalyzer
from src.geometry import clifford_immersion, control_immersion
from src.schema import CliffordSpec


@lru_cache(maxsize=None)
def _cached(family: str, r2: float, grid: int, flip: bool) -> SurfaceAnalyzer:
    if family == "clifford":
        surface = clifford_immersion(CliffordSpec.from_r2(1, 1, r2), grid, grid)
    else:
        surface = control_immersion(grid, grid)
    return SurfaceAnalyzer(surface, flip_normal=flip)


@pytest.fixture(scope="session")
def make_analyzer():
    def factory(family: str = "clifford", r2: float = 0.5, grid: int = 32, flip: bool = False) -> SurfaceAnalyzer:
        return _cached(family, r2, grid, flip)
    return factory


@pytest.fixture(scope="session")
def minimal_clifford(make_analyzer):
    return make_analyzer("clifford", 0.5, 32)


@pytest.fixture(scope="session")
def clifford_02(make_analyzer):
    return make_analyzer("clifford", 0.2, 64)


@pytest.fixture(scope="session")
def control(make_analyzer):
    return make_analyzer("control-noncmc", 0.5, 64)
