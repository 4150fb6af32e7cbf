"""
Date: 18-10-2026
Reading and writing immersion sample files.

Format: a header line `Nu Nv Lu Lv has_derivatives`, then Nu*Nv whitespace-separated rows
`i j x0 x1 x2 x3 [du0..du3 dv0..dv3 duu0..duu3 duv0..duv3 dvv0..dvv3]`, row-major in i then j.
Files without derivatives get second-order central differences on the periodic grid.
"""

import logging
from pathlib import Path
from typing import List, Union

import numpy as np
import pandas as pd

from .config import (
    AMBIENT_DIMENSION,
    FLOAT_FORMAT,
    SAMPLE_FULL_COLUMNS,
    SAMPLE_HEADER_FIELDS,
    SAMPLE_POSITION_COLUMNS,
)
from .errors import ImmersionFileError
from .geometry.immersion import DERIVATIVE_FIELDS, ImmersionGrid, grid_from_positions

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _columns(has_derivatives: bool) -> List[str]:
    columns = ["i", "j"] + [f"x{k}" for k in range(AMBIENT_DIMENSION)]
    if has_derivatives:
        for name in DERIVATIVE_FIELDS:
            suffix = name.split("_")[1]
            columns += [f"d{suffix}{k}" for k in range(AMBIENT_DIMENSION)]
    return columns


def _read_header(path: Path):
    with path.open("r") as handle:
        tokens = handle.readline().split()
    if len(tokens) != SAMPLE_HEADER_FIELDS:
        raise ImmersionFileError(
            f"{path}: header must have {SAMPLE_HEADER_FIELDS} fields 'Nu Nv Lu Lv has_derivatives', got {tokens}"
        )
    try:
        n_u, n_v = int(tokens[0]), int(tokens[1])
        lu, lv = float(tokens[2]), float(tokens[3])
        flag = int(tokens[4])
    except ValueError as e:
        raise ImmersionFileError(f"{path}: unreadable header {tokens}: {e}") from e
    if flag not in (0, 1):
        raise ImmersionFileError(f"{path}: has_derivatives must be 0 or 1, got {flag}")
    return n_u, n_v, lu, lv, bool(flag)


def load_immersion_file(path: PathLike, label: str = "file") -> ImmersionGrid:
    """
    Load a sampled immersion.

    :param path: Sample file path.
    :param label: Family tag for reports.
    :return: ImmersionGrid (analytic-flagged when the file carries derivatives).
    """
    path = Path(path)
    n_u, n_v, lu, lv, has_derivatives = _read_header(path)
    expected = SAMPLE_FULL_COLUMNS if has_derivatives else SAMPLE_POSITION_COLUMNS

    try:
        df = pd.read_csv(path, sep=r"\s+", header=None, skiprows=1, dtype=float)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
        raise ImmersionFileError(f"{path}: cannot parse sample rows: {e}") from e

    if df.shape[1] != expected:
        raise ImmersionFileError(f"{path}: expected {expected} columns per row, got {df.shape[1]}")
    if len(df) != n_u * n_v:
        raise ImmersionFileError(f"{path}: expected {n_u * n_v} rows for a {n_u}x{n_v} grid, got {len(df)}")
    df.columns = _columns(has_derivatives)

    values = df.to_numpy()
    if not np.all(np.isfinite(values)):
        raise ImmersionFileError(f"{path}: non-finite values in sample rows")

    df = df.sort_values(["i", "j"], kind="mergesort")
    i = df["i"].to_numpy()
    j = df["j"].to_numpy()
    expected_i, expected_j = np.divmod(np.arange(n_u * n_v), n_v)
    if not (np.array_equal(i, expected_i) and np.array_equal(j, expected_j)):
        raise ImmersionFileError(f"{path}: node indices do not cover the {n_u}x{n_v} grid exactly once")

    def block(prefix: str) -> np.ndarray:
        cols = [f"{prefix}{k}" for k in range(AMBIENT_DIMENSION)]
        return df[cols].to_numpy().reshape(n_u, n_v, AMBIENT_DIMENSION)

    phi = block("x")
    try:
        if not has_derivatives:
            logger.warning(f"{path}: no derivatives supplied, using central differences (CMC tolerance loosened)")
            return grid_from_positions(phi, lu, lv, label=label)

        derivatives = {name: block("d" + name.split("_")[1]) for name in DERIVATIVE_FIELDS}
        logger.info(f"Loaded {n_u}x{n_v} immersion with derivatives from {path}")
        return ImmersionGrid(phi=phi, lu=lu, lv=lv, derivative_source="file", label=label, **derivatives)
    except ValueError as e:
        raise ImmersionFileError(f"{path}: {e}") from e


def save_immersion_file(grid: ImmersionGrid, path: PathLike, include_derivatives: bool = True) -> Path:
    """
    Write a grid in the sample format with 17 significant digits.

    :param grid: Sampled immersion.
    :param path: Output path.
    :param include_derivatives: Write the 20 derivative columns.
    :return: The written path.
    """
    path = Path(path)
    i, j = np.divmod(np.arange(grid.n_nodes), grid.n_v)
    data = {"i": i, "j": j}
    blocks = [("x", grid.phi)]
    if include_derivatives:
        blocks += [("d" + name.split("_")[1], getattr(grid, name)) for name in DERIVATIVE_FIELDS]
    for prefix, array in blocks:
        flat = array.reshape(grid.n_nodes, AMBIENT_DIMENSION)
        for k in range(AMBIENT_DIMENSION):
            data[f"{prefix}{k}"] = flat[:, k]

    df = pd.DataFrame(data)
    header = (
        f"{grid.n_u} {grid.n_v} {FLOAT_FORMAT % grid.lu} {FLOAT_FORMAT % grid.lv} "
        f"{int(include_derivatives)}\n"
    )
    with path.open("w") as handle:
        handle.write(header)
        df.to_csv(handle, sep=" ", header=False, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote {grid.n_u}x{grid.n_v} immersion to {path}")
    return path
