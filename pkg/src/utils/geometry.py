"""
Date: 18-10-2026
Per-node vector utilities for sampled immersions in R^4.
Arrays carry node axes first and the vector axis last.
"""

import numpy as np


def calculate_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Node-wise inner product over the last axis.

    :param a: Array of vectors (..., d).
    :param b: Array of vectors (..., d).
    :return: Array of inner products (...).
    """
    return np.einsum("...k,...k->...", a, b)


def calculate_cross4(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """
    Generalized cross product in R^4.

    The result X satisfies X . w = det[a; b; c; w] for every w, so it is orthogonal to
    a, b, c and det[a; b; c; X] = |X|^2 >= 0.

    :param a: Array of vectors (..., 4).
    :param b: Array of vectors (..., 4).
    :param c: Array of vectors (..., 4).
    :return: Array of vectors (..., 4).
    """
    rows = np.stack([a, b, c], axis=-2)
    out = np.empty(a.shape, dtype=float)
    for i in range(4):
        minor = np.delete(rows, i, axis=-1)
        sign = 1.0 if (i + 3) % 2 == 0 else -1.0
        out[..., i] = sign * np.linalg.det(minor)
    return out


def calculate_orientation(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """
    Node-wise det[a; b; c; d].

    :return: Array of determinants (...).
    """
    return np.linalg.det(np.stack([a, b, c, d], axis=-2))


def periodic_first_difference(values: np.ndarray, step: float, axis: int) -> np.ndarray:
    """
    Second-order central difference on a periodic axis.

    :param values: Samples, periodic along axis.
    :param step: Grid spacing.
    :param axis: Axis to differentiate.
    :return: Derivative estimate.
    """
    return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2.0 * step)


def periodic_second_difference(values: np.ndarray, step: float, axis: int) -> np.ndarray:
    """
    Second-order central second difference on a periodic axis.

    :param values: Samples, periodic along axis.
    :param step: Grid spacing.
    :param axis: Axis to differentiate.
    :return: Second derivative estimate.
    """
    return (np.roll(values, -1, axis=axis) - 2.0 * values + np.roll(values, 1, axis=axis)) / (step * step)


def periodic_mixed_difference(values: np.ndarray, step_u: float, step_v: float) -> np.ndarray:
    """
    Central mixed derivative on a doubly periodic grid (axes 0 and 1).
    """
    return periodic_first_difference(periodic_first_difference(values, step_u, 0), step_v, 1)
