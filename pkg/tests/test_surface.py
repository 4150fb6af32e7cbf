import dataclasses
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.errors import DegenerateImmersionError
from src.geometry import (
    clifford_immersion,
    compute_surface_geometry,
    default_cmc_tol,
    grid_from_positions,
)
from src.schema import CliffordSpec
from src.utils.geometry import calculate_dot, calculate_orientation


def test_minimal_clifford_curvatures(minimal_clifford):
    geom = minimal_clifford.geometry
    assert_allclose(geom.mean_curvature, 0.0, atol=1e-10)
    assert_allclose(geom.A2, 2.0, atol=1e-10)
    assert geom.H_constant


def test_clifford_02_mean_curvature_sign(clifford_02):
    geom = clifford_02.geometry
    # positively oriented normal (s cos u, s sin u, -r cos v, -r sin v)
    assert_allclose(geom.mean_curvature, -0.75, atol=1e-10)
    assert_allclose(geom.A2, 4.25, atol=1e-10)
    assert_allclose(geom.H_mean, -0.75, atol=1e-10)


def test_normal_frame(clifford_02):
    geom = clifford_02.geometry
    grid = geom.grid
    assert_allclose(np.linalg.norm(geom.normal, axis=-1), 1.0, atol=1e-12)
    for tangent in (grid.phi, grid.phi_u, grid.phi_v):
        assert np.max(np.abs(calculate_dot(geom.normal, tangent))) < 1e-12
    orientation = calculate_orientation(grid.phi, grid.phi_u, grid.phi_v, geom.normal)
    assert np.all(orientation > 0)


@pytest.mark.parametrize("flip", [False, True])
def test_orientation_rule_checked(caplog, flip):
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), 16, 16)
    with caplog.at_level("WARNING"):
        geom = compute_surface_geometry(grid, flip_normal=flip)
    assert not [r for r in caplog.records if "orientation" in r.getMessage()]
    sign = -1.0 if flip else 1.0
    frame = calculate_orientation(grid.phi, grid.phi_u, grid.phi_v, geom.normal)
    assert np.all(sign * frame > 0)


def test_orientation_follows_parameter_order(caplog):
    # swapping u and v reverses the frame; the computed normal and H follow it
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), 16, 16)
    swapped = dataclasses.replace(grid, phi_u=grid.phi_v, phi_v=grid.phi_u, phi_uu=grid.phi_vv, phi_vv=grid.phi_uu)
    with caplog.at_level("WARNING"):
        geom = compute_surface_geometry(swapped)
    assert not [r for r in caplog.records if "orientation" in r.getMessage()]
    assert_allclose(geom.mean_curvature, 0.75, atol=1e-10)


def test_orientation_warning_on_misoriented_normal(caplog, monkeypatch):
    import src.geometry.surface as surface

    original = surface.calculate_cross4
    monkeypatch.setattr(surface, "calculate_cross4", lambda a, b, c: -original(a, b, c))
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), 8, 8)
    with caplog.at_level("WARNING"):
        compute_surface_geometry(grid)
    assert any("orientation inconsistent at 64 node(s)" in r.getMessage() for r in caplog.records)


def test_weights_and_area(clifford_02):
    geom = clifford_02.geometry
    h = 2 * math.pi / 64
    assert_allclose(geom.weights, 0.4 * h * h, rtol=1e-12)
    assert_allclose(geom.area, 4 * math.pi ** 2 * 0.4, rtol=1e-12)


def test_cauchy_schwarz_strict_on_clifford(make_analyzer):
    for r2 in (0.2, 0.5, 0.9):
        geom = make_analyzer("clifford", r2, 16).geometry
        assert geom.cauchy_schwarz_min > 0.0
        assert geom.umbilicity_gap > 0.0


def test_flip_normal_negates_mean_curvature(make_analyzer):
    geom = make_analyzer("clifford", 0.2, 16).geometry
    flipped = make_analyzer("clifford", 0.2, 16, flip=True).geometry
    assert_allclose(flipped.mean_curvature, -geom.mean_curvature, atol=1e-14)
    assert_allclose(flipped.second_form, -geom.second_form, atol=1e-14)
    assert_allclose(flipped.A2, geom.A2, atol=1e-14)
    assert_allclose(flipped.weights, geom.weights)
    assert flipped.flipped


def test_control_is_not_cmc(control):
    geom = control.geometry
    assert not geom.H_constant
    assert geom.H_deviation > 0.05
    assert geom.cauchy_schwarz_min > -1e-9


def test_degenerate_metric_raises():
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.5), 8, 8)
    collapsed = dataclasses.replace(grid, phi_v=np.zeros_like(grid.phi_v))
    with pytest.raises(DegenerateImmersionError) as info:
        compute_surface_geometry(collapsed)
    assert info.value.node == (0, 0)
    assert info.value.det_g == 0.0


def test_finite_difference_grid_tolerance():
    analytic = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), 32, 32)
    sampled = grid_from_positions(analytic.phi)
    assert sampled.derivative_source == "finite_difference"
    assert default_cmc_tol(analytic) == 1e-8
    assert_allclose(default_cmc_tol(sampled), 0.1 * (2 * math.pi / 32) ** 2)

    geom = compute_surface_geometry(sampled)
    # translation invariance keeps H constant even though each value carries O(h^2) error
    assert geom.H_constant
    assert_allclose(geom.H_mean, -0.75, atol=5e-2)
