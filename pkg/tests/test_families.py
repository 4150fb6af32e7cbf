import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from src.errors import UnsupportedFamilyError
from src.geometry import (
    clifford_immersion,
    clifford_scalars,
    control_immersion,
    umbilical_scalars,
    validate_immersion,
)
from src.geometry.immersion import ImmersionGrid
from src.schema import CliffordSpec, UmbilicalSpec


@pytest.mark.parametrize("p, q, r2, H, A2", [
    (1, 1, 0.5, 0.0, 2.0),
    (1, 1, 0.2, 0.75, 4.25),
    (1, 2, 1.0 / 3.0, 0.0, 3.0),
])
def test_clifford_scalars(p, q, r2, H, A2):
    spec = CliffordSpec.from_r2(p, q, r2)
    h, a2, curvatures = clifford_scalars(spec)
    assert_allclose(h, H, atol=1e-12)
    assert_allclose(a2, A2, rtol=1e-12)
    trace = sum(k * m for k, m in curvatures) / spec.n
    assert_allclose(trace, h, atol=1e-12)
    assert a2 > spec.n * h * h


def test_clifford_minimal_radius():
    for p, q in [(1, 1), (1, 2), (2, 3)]:
        spec = CliffordSpec.from_r2(p, q, p / (p + q))
        H, A2, _ = clifford_scalars(spec)
        assert abs(H) < 1e-12
        assert_allclose(A2, p + q, rtol=1e-12)


def test_clifford_spec_validation():
    with pytest.raises(ValueError):
        CliffordSpec.from_r2(1, 1, 1.5)
    with pytest.raises(ValidationError):
        CliffordSpec(p=0, q=1, r=0.5)
    with pytest.raises(ValidationError):
        UmbilicalSpec(n=1, rho=0.5)


@pytest.mark.parametrize("n, rho, H, A2", [
    (2, 1.0, 0.0, 0.0),
    (2, 0.8, 0.75, 1.125),
])
def test_umbilical_scalars(n, rho, H, A2):
    h, a2 = umbilical_scalars(UmbilicalSpec(n=n, rho=rho))
    assert_allclose(h, H, atol=1e-12)
    assert_allclose(a2, A2, atol=1e-12)
    assert_allclose(a2 - n * h * h, 0.0, atol=1e-12)


def test_clifford_immersion_first_node():
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.5), 16, 16)
    assert_allclose(grid.phi[0, 0], [1 / math.sqrt(2), 0.0, 1 / math.sqrt(2), 0.0], atol=1e-15)
    assert grid.derivative_source == "analytic"
    assert grid.phi.shape == (16, 16, 4)


def test_clifford_immersion_rejects_higher_dimensions():
    with pytest.raises(UnsupportedFamilyError):
        clifford_immersion(CliffordSpec.from_r2(1, 2, 0.3), 16, 16)


def test_immersion_grid_shape_checks():
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.5), 8, 8)
    with pytest.raises(ValueError):
        ImmersionGrid(
            phi=grid.phi, phi_u=grid.phi_u[:4], phi_v=grid.phi_v,
            phi_uu=grid.phi_uu, phi_uv=grid.phi_uv, phi_vv=grid.phi_vv,
        )
    with pytest.raises(ValueError):
        ImmersionGrid(
            phi=grid.phi[:2], phi_u=grid.phi_u[:2], phi_v=grid.phi_v[:2],
            phi_uu=grid.phi_uu[:2], phi_uv=grid.phi_uv[:2], phi_vv=grid.phi_vv[:2],
        )


def test_validate_analytic_clifford():
    residuals = validate_immersion(clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), 32, 32))
    assert residuals.unit_sphere <= 1e-12
    assert residuals.tangency_u <= 1e-12
    assert residuals.tangency_v <= 1e-12
    assert 1e-6 < residuals.fd_consistency < 1e-1
    assert residuals.passes(1e-9)


def test_validate_reports_scaled_positions():
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.5), 16, 16)
    scaled = ImmersionGrid(
        phi=1.01 * grid.phi, phi_u=grid.phi_u, phi_v=grid.phi_v,
        phi_uu=grid.phi_uu, phi_uv=grid.phi_uv, phi_vv=grid.phi_vv,
    )
    residuals = validate_immersion(scaled)
    assert_allclose(residuals.unit_sphere, 0.01, rtol=1e-9)
    assert not residuals.passes(1e-9)


@pytest.mark.parametrize("build", [
    lambda n: clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), n, n),
    lambda n: control_immersion(n, n),
])
def test_fd_consistency_is_second_order(build):
    coarse = validate_immersion(build(32)).fd_consistency
    fine = validate_immersion(build(64)).fd_consistency
    assert 3.0 < coarse / fine < 5.0


def test_control_torus_lies_on_sphere():
    residuals = validate_immersion(control_immersion(32, 32))
    assert residuals.unit_sphere <= 1e-12
    assert max(residuals.tangency_u, residuals.tangency_v) <= 1e-12
    assert np.isfinite(residuals.fd_consistency)
