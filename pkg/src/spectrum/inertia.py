"""
Date: 18-10-2026
Negative-eigenvalue counting by congruence (Sylvester's law of inertia).
The symmetric indefinite factorization A = L D L^T (Bunch-Kaufman, 1x1 and 2x2 pivots)
has the inertia of A in its block diagonal D.
"""

import logging
from typing import NamedTuple, Tuple

import numpy as np
from scipy import linalg, sparse

from ..config import DEFAULT_TAU_DISCRETE, ZERO_PIVOT_TOL
from ..schema import IndexReport

logger = logging.getLogger(__name__)


class Inertia(NamedTuple):
    negative: int
    zero: int
    positive: int
    method: str


def _dense(matrix) -> np.ndarray:
    if sparse.issparse(matrix):
        matrix = matrix.toarray()
    matrix = np.asarray(matrix, dtype=float)
    return 0.5 * (matrix + matrix.T)


def _count(values: np.ndarray, tol: float) -> Tuple[int, int, int]:
    return int(np.sum(values < -tol)), int(np.sum(np.abs(values) <= tol)), int(np.sum(values > tol))


def _block_eigenvalues(d: np.ndarray) -> np.ndarray:
    values = []
    i = 0
    size = d.shape[0]
    while i < size:
        if i + 1 < size and d[i + 1, i] != 0.0:
            values.extend(linalg.eigvalsh(d[i:i + 2, i:i + 2]))
            i += 2
        else:
            values.append(d[i, i])
            i += 1
    return np.asarray(values)


def inertia(matrix, zero_tol: float = ZERO_PIVOT_TOL) -> Inertia:
    """
    Inertia of a symmetric matrix from its LDL^T factorization.

    Falls back to a dense symmetric eigen-decomposition when the factorization produces
    non-finite entries or a pivot within the zero tolerance (the count would not be reliable).

    :param matrix: Symmetric matrix (dense or sparse).
    :param zero_tol: Relative tolerance for zero pivots.
    :return: Inertia with the method that produced it.
    """
    A = _dense(matrix)
    if A.size == 0:
        return Inertia(0, 0, 0, "empty")
    tol = zero_tol * max(1.0, float(np.max(np.abs(A))))

    try:
        lu, d, _ = linalg.ldl(A, lower=True, hermitian=True)
        if not (np.all(np.isfinite(lu)) and np.all(np.isfinite(d))):
            raise FloatingPointError("non-finite factor")
        pivots = _block_eigenvalues(d)
        neg, zero, pos = _count(pivots, tol)
        if zero:
            raise FloatingPointError(f"{zero} pivot(s) within {tol:.1e} of zero")
        return Inertia(neg, zero, pos, "ldl")
    except (FloatingPointError, ValueError, np.linalg.LinAlgError) as e:
        logger.warning(f"LDL^T inertia unreliable ({e}); falling back to eigvalsh")

    neg, zero, pos = _count(linalg.eigvalsh(A), tol)
    return Inertia(neg, zero, pos, "eigh")


def mean_zero_restriction(matrix, constraint: np.ndarray) -> np.ndarray:
    """
    Restrict a symmetric matrix to {f : constraint . f = 0}.

    One Householder reflector H = I - 2 v v^T sends a = constraint/|constraint| to -e_1, so
    columns 2..N of H are an orthonormal basis of the constraint hyperplane and
    (H A H)[1:, 1:] is the restricted matrix.

    :param matrix: Symmetric N x N matrix.
    :param constraint: Nonzero vector of length N.
    :return: Dense (N-1) x (N-1) matrix.
    """
    A = _dense(matrix)
    a = np.asarray(constraint, dtype=float)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        raise ValueError("Constraint vector is zero")
    a = a / norm
    if a[0] < 0:
        a = -a
    v = a.copy()
    v[0] += 1.0
    v /= np.linalg.norm(v)

    w = A @ v
    reflected = A - 2.0 * np.outer(v, w) - 2.0 * np.outer(w, v) + 4.0 * float(v @ w) * np.outer(v, v)
    return reflected[1:, 1:]


def _index_pair(A: np.ndarray, M: np.ndarray, tau: float) -> Tuple[int, int, set]:
    if tau == 0.0:
        result = inertia(A)
        return result.negative, result.negative, {result.method}
    lo = inertia(A + tau * M)
    hi = inertia(A - tau * M)
    return lo.negative, hi.negative, {lo.method, hi.method}


def _notes(lo: int, hi: int, tau: float, kind: str) -> list:
    if lo == hi:
        return []
    return [f"{hi - lo} {kind} eigenvalue(s) within tau={tau:g} of zero; refine the grid or reduce tau"]


def weak_index_discrete(matrix, mass, tau: float = DEFAULT_TAU_DISCRETE) -> IndexReport:
    """
    Certified interval for the weak index: negative counts of K + tau M and K - tau M on the
    mean-zero subspace. The constraint vector is the row sums of the mass, i.e. the integral
    of each hat function.

    :param matrix: Jacobi matrix K_J.
    :param mass: Mass paired with K_J.
    :param tau: Zero tolerance.
    :return: IndexReport with weak fields.
    """
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    constraint = np.asarray(mass.sum(axis=1)).ravel()
    K = mean_zero_restriction(matrix, constraint)
    M = mean_zero_restriction(mass, constraint)
    lo, hi, methods = _index_pair(K, M, tau)
    factorization = "ldl" if methods <= {"ldl"} else "eigh"
    logger.info(f"Weak index in [{lo}, {hi}] (tau={tau:g}, {factorization})")
    return IndexReport(
        weak_lo=lo, weak_hi=hi, tau=tau, method="discrete",
        factorization=factorization, notes=_notes(lo, hi, tau, "constrained"),
    )


def strong_index_discrete(matrix, mass, tau: float = DEFAULT_TAU_DISCRETE) -> IndexReport:
    """
    Certified interval for the strong index (no constraint).

    :param matrix: Jacobi matrix K_J.
    :param mass: Mass paired with K_J.
    :param tau: Zero tolerance.
    :return: IndexReport with strong fields.
    """
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    lo, hi, methods = _index_pair(_dense(matrix), _dense(mass), tau)
    factorization = "ldl" if methods <= {"ldl"} else "eigh"
    logger.info(f"Strong index in [{lo}, {hi}] (tau={tau:g}, {factorization})")
    return IndexReport(
        strong_lo=lo, strong_hi=hi, tau=tau, method="discrete",
        factorization=factorization, notes=_notes(lo, hi, tau, "unconstrained"),
    )


def index_discrete(matrix, mass, tau: float = DEFAULT_TAU_DISCRETE) -> IndexReport:
    """Weak and strong intervals in one report."""
    weak = weak_index_discrete(matrix, mass, tau)
    strong = strong_index_discrete(matrix, mass, tau)
    merged = weak.merge(strong)
    if weak.factorization != strong.factorization:
        merged = merged.model_copy(update={"factorization": "eigh"})
    return merged
