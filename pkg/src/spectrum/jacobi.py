"""
Date: 18-10-2026
Discrete Jacobi form K_J ~ int |grad f|^2 - (|A|^2 + n) f^2 and its lowest eigenvalues.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import eigsh

from ..config import DENSE_EIGEN_LIMIT, DISCRETE_EIGEN_COUNT, POTENTIAL_QUADRATURE
from ..geometry.surface import SurfaceGeometry
from ..laplace.forms import DiscreteForms, assemble_weighted_mass
from ..schema import SpectrumEntry, SpectrumReport

logger = logging.getLogger(__name__)

POTENTIAL_RULES = ("consistent", "lumped")


@dataclass(frozen=True, slots=True)
class JacobiForm:
    """
    Symmetric Jacobi matrix with the mass it is paired with. The inertia shift and the
    mean-zero constraint both use this mass.
    """
    matrix: sparse.csr_matrix
    mass: sparse.csr_matrix
    potential_rule: str
    potential_max: float

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def hat_integrals(self) -> np.ndarray:
        """Row sums of the mass: the integral of each nodal basis function."""
        return np.asarray(self.mass.sum(axis=1)).ravel()

    def quadratic(self, f: np.ndarray) -> float:
        values = np.ravel(f)
        return float(values @ (self.matrix @ values))


def assemble_jacobi(
    geom: SurfaceGeometry,
    forms: DiscreteForms,
    potential_rule: str = POTENTIAL_QUADRATURE
) -> JacobiForm:
    """
    K_J = stiffness - P, with P the potential (|A|^2 + n) integrated against hat functions.

    "consistent" pairs P with the Galerkin mass (a Rayleigh-Ritz discretization: discrete
    eigenvalues bound the continuous ones from above); "lumped" uses the diagonal w_i (|A|^2_i + n).

    :param geom: Surface geometry.
    :param forms: Assembled forms.
    :param potential_rule: "consistent" or "lumped".
    :return: JacobiForm.
    """
    potential = geom.A2 + geom.n
    if potential_rule == "consistent":
        P = assemble_weighted_mass(geom, potential)
        mass = forms.gram
    elif potential_rule == "lumped":
        P = sparse.diags(forms.weights * geom.flat(potential)).tocsr()
        mass = forms.mass
    else:
        raise ValueError(f"Unknown potential rule '{potential_rule}', expected one of {POTENTIAL_RULES}")

    matrix = (forms.stiffness - P).tocsr()
    matrix = ((matrix + matrix.T) * 0.5).tocsr()
    logger.info(f"Assembled Jacobi form ({potential_rule} potential, N={matrix.shape[0]})")
    return JacobiForm(
        matrix=matrix, mass=mass, potential_rule=potential_rule,
        potential_max=float(np.max(potential)),
    )


def lowest_eigenvalues(
    matrix: sparse.spmatrix,
    mass: sparse.spmatrix,
    count: int,
    sigma: float
) -> np.ndarray:
    """
    Lowest eigenvalues of the pencil (matrix, mass); sigma must lie below the spectrum.

    :param matrix: Symmetric matrix.
    :param mass: Symmetric positive definite mass.
    :param count: Number of eigenvalues.
    :param sigma: Shift for shift-invert Lanczos.
    :return: Sorted eigenvalues.
    """
    size = matrix.shape[0]
    count = min(count, size)
    if size <= DENSE_EIGEN_LIMIT or count >= size - 1:
        values = linalg.eigh(matrix.toarray(), mass.toarray(), eigvals_only=True)
        return np.sort(values)[:count]
    values = eigsh(matrix.tocsc(), k=count, M=mass.tocsc(), sigma=sigma, which="LM", return_eigenvectors=False)
    return np.sort(values)


def discrete_spectrum(
    geom: SurfaceGeometry,
    jacobi: JacobiForm,
    count: int = DISCRETE_EIGEN_COUNT,
    family: str = "discrete"
) -> SpectrumReport:
    """
    Lowest eigenvalues of the discrete Jacobi operator as a SpectrumReport (multiplicity 1 each).

    :param geom: Surface geometry (echoed H, |A|^2).
    :param jacobi: Jacobi form.
    :param count: Number of eigenvalues.
    :param family: Family tag.
    :return: SpectrumReport.
    """
    values = lowest_eigenvalues(jacobi.matrix, jacobi.mass, count, sigma=-jacobi.potential_max - 1.0)
    A2_spread = float(np.ptp(geom.A2))
    return SpectrumReport(
        family=family,
        entries=[SpectrumEntry(eigenvalue=float(v), multiplicity=1, label=(i,)) for i, v in enumerate(values)],
        cutoff=len(values),
        window=float(values[-1]),
        H=geom.H_mean,
        A2=float(np.mean(geom.A2)),
        n=geom.n,
        constant_A2=A2_spread <= geom.cmc_tol,
    )


def laplacian_eigenvalues(forms: DiscreteForms, count: int = DISCRETE_EIGEN_COUNT) -> np.ndarray:
    """
    Lowest eigenvalues of -Delta, i.e. of the pencil (stiffness, lumped mass).

    :param forms: Assembled forms.
    :param count: Number of eigenvalues.
    :return: Sorted eigenvalues, starting at 0.
    """
    return lowest_eigenvalues(forms.stiffness, forms.mass, count, sigma=-1.0)
