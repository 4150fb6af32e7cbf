import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.data_loader import load_immersion_file, save_immersion_file
from src.errors import ImmersionFileError
from src.geometry import clifford_immersion, control_immersion
from src.schema import CliffordSpec

TWO_PI = "6.2831853071795862"


def _write(path, header, rows):
    path.write_text(header + "\n" + "\n".join(rows) + "\n")
    return path


def _position_rows(n_u, n_v, value="1 0 0 0"):
    return [f"{i} {j} {value}" for i in range(n_u) for j in range(n_v)]


def test_round_trip_with_derivatives(tmp_path):
    grid = control_immersion(8, 6)
    path = save_immersion_file(grid, tmp_path / "control.txt")
    loaded = load_immersion_file(path)
    assert loaded.derivative_source == "file"
    assert loaded.lu == grid.lu and loaded.lv == grid.lv
    for name in ("phi", "phi_u", "phi_v", "phi_uu", "phi_uv", "phi_vv"):
        assert np.array_equal(getattr(loaded, name), getattr(grid, name)), name


def test_positions_only_file_uses_central_differences(tmp_path):
    grid = clifford_immersion(CliffordSpec.from_r2(1, 1, 0.2), 16, 16)
    path = save_immersion_file(grid, tmp_path / "positions.txt", include_derivatives=False)
    assert path.read_text().splitlines()[0].endswith(" 0")
    loaded = load_immersion_file(path, label="sampled")
    assert loaded.derivative_source == "finite_difference"
    assert loaded.label == "sampled"
    assert np.array_equal(loaded.phi, grid.phi)
    assert_allclose(loaded.phi_u, grid.phi_u, atol=0.05)


def test_rows_may_come_in_any_order(tmp_path):
    rows = _position_rows(4, 4)[::-1]
    loaded = load_immersion_file(_write(tmp_path / "reversed.txt", f"4 4 {TWO_PI} {TWO_PI} 0", rows))
    assert loaded.phi.shape == (4, 4, 4)


@pytest.mark.parametrize("header", [
    f"4 4 {TWO_PI} {TWO_PI}",
    f"4 4 {TWO_PI} {TWO_PI} 2",
    f"four 4 {TWO_PI} {TWO_PI} 0",
])
def test_malformed_header(tmp_path, header):
    path = _write(tmp_path / "bad.txt", header, _position_rows(4, 4))
    with pytest.raises(ImmersionFileError):
        load_immersion_file(path)


def test_wrong_column_count(tmp_path):
    path = _write(tmp_path / "bad.txt", f"4 4 {TWO_PI} {TWO_PI} 1", _position_rows(4, 4))
    with pytest.raises(ImmersionFileError, match="columns"):
        load_immersion_file(path)


def test_wrong_row_count(tmp_path):
    path = _write(tmp_path / "bad.txt", f"4 4 {TWO_PI} {TWO_PI} 0", _position_rows(4, 4)[:-1])
    with pytest.raises(ImmersionFileError, match="rows"):
        load_immersion_file(path)


def test_duplicate_node_indices(tmp_path):
    rows = _position_rows(4, 4)
    rows[1] = "0 0 1 0 0 0"
    path = _write(tmp_path / "bad.txt", f"4 4 {TWO_PI} {TWO_PI} 0", rows)
    with pytest.raises(ImmersionFileError, match="indices"):
        load_immersion_file(path)


def test_non_finite_values(tmp_path):
    rows = _position_rows(4, 4)
    rows[5] = "1 1 nan 0 0 0"
    path = _write(tmp_path / "bad.txt", f"4 4 {TWO_PI} {TWO_PI} 0", rows)
    with pytest.raises(ImmersionFileError, match="non-finite"):
        load_immersion_file(path)


def test_unparseable_value(tmp_path):
    rows = _position_rows(4, 4)
    rows[2] = "0 2 x 0 0 0"
    path = _write(tmp_path / "bad.txt", f"4 4 {TWO_PI} {TWO_PI} 0", rows)
    with pytest.raises(ImmersionFileError):
        load_immersion_file(path)


def test_grid_too_small(tmp_path):
    path = _write(tmp_path / "small.txt", f"2 2 {TWO_PI} {TWO_PI} 0", _position_rows(2, 2))
    with pytest.raises(ImmersionFileError):
        load_immersion_file(path)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_immersion_file(tmp_path / "absent.txt")
