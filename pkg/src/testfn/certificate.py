"""
Date: 18-10-2026
Certificate for ind_T >= dim V on a sampled CMC torus, V = span{h_u : int h_u = 0}.
The quadratic form is checked on the whole admissible span (its Gram matrix must be
negative definite), the per-direction values and the inequality
    Q(h_u) <= -n int (f_u + H l_u)^2
are reported as evidence.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy import linalg

from ..geometry.surface import SurfaceGeometry
from ..laplace.forms import DiscreteForms, integrate
from ..errors import TheoremHypothesisError
from ..schema import DirectionEvidence, TheoremCertificate, Tolerances
from ..spectrum.jacobi import JacobiForm
from .support import SupportFunctions

logger = logging.getLogger(__name__)

CLIFFORD_FLAG = "support functions linearly dependent (Clifford-type); ind_T >= n+2 applies"
MINIMAL_FLAG = "minimal surface: c = 0 and h_u reduces to f_u"


def quadratic_form(jacobi: JacobiForm, f: np.ndarray) -> float:
    """
    Discrete int f J(f) = f^T K_J f.

    :param jacobi: Jacobi form.
    :param f: Node values.
    :return: Quadratic form value.
    """
    return jacobi.quadratic(f)


def mean_functional(jacobi: JacobiForm, support: SupportFunctions) -> np.ndarray:
    """
    Coefficients a_alpha = int h_alpha of the linear map u -> int h_u, integrated against
    the mass of the Jacobi form (the same mean-zero constraint the discrete index uses).
    """
    return support.h_basis @ jacobi.hat_integrals


def admissible_basis(
    jacobi: JacobiForm,
    support: SupportFunctions,
    tau_adm: float
) -> np.ndarray:
    """
    Orthonormal basis of the kernel of u -> int h_u; the full space when the functional
    is below tau_adm.

    :param jacobi: Jacobi form; its mass defines the mean.
    :param support: Support functions.
    :param tau_adm: Absolute tolerance on |int h_u| for unit u.
    :return: Array (k, n+2), rows are basis vectors.
    """
    a = mean_functional(jacobi, support)
    if np.linalg.norm(a) <= tau_adm:
        return np.eye(support.dimension)
    return linalg.null_space(a[None, :]).T


def support_independence_margin(geom: SurfaceGeometry, support: SupportFunctions) -> float:
    """
    Smallest singular value of the area-normalized, mass-weighted matrix [l_alpha, f_alpha].
    Vanishes when some l_v is a multiple of f_v (Clifford and umbilical surfaces).

    :param geom: Surface geometry.
    :param support: Support functions.
    :return: Margin.
    """
    scale = np.sqrt(geom.weights.ravel() / geom.area)
    columns = np.vstack([support.l, support.f]).T * scale[:, None]
    return float(np.linalg.svd(columns, compute_uv=False).min())


def theorem_certificate(
    geom: SurfaceGeometry,
    forms: DiscreteForms,
    jacobi: JacobiForm,
    support: SupportFunctions,
    tolerances: Optional[Tolerances] = None
) -> TheoremCertificate:
    """
    Build the certificate. Refused on totally umbilical surfaces, where ind_T = 0.

    :param geom: Surface geometry.
    :param forms: Assembled forms.
    :param jacobi: Jacobi form.
    :param support: Support functions.
    :param tolerances: Certificate tolerances.
    :return: TheoremCertificate.
    """
    tol = tolerances or Tolerances()
    gap = geom.umbilicity_gap
    if gap <= tol.umbilic_tol:
        logger.error(f"Certificate refused: surface is totally umbilical (gap {gap:.2e})")
        raise TheoremHypothesisError(gap)

    n, H = support.n, support.H
    area = geom.area
    tau_strict = tol.tau_strict_factor * area
    tau_adm = tol.tau_adm_factor * math.sqrt(area)
    slack_tol = tol.slack_factor * area

    basis = admissible_basis(jacobi, support, tau_adm)
    tests = basis @ support.h_basis
    gram = tests @ (jacobi.matrix @ tests.T)
    gram = 0.5 * (gram + gram.T)
    top = float(linalg.eigvalsh(gram).max())

    directions = []
    for u, h, q in zip(basis, tests, np.diag(gram)):
        g = support.f_u(u) + H * support.l_u(u)
        rhs = -n * integrate(geom, g * g)
        directions.append(DirectionEvidence(
            u=tuple(float(x) for x in u),
            mean_integral=float(jacobi.hat_integrals @ h),
            Q_value=float(q),
            rhs=rhs,
            slack=rhs - float(q),
        ))

    weighted = tests * np.sqrt(geom.weights.ravel())[None, :]
    singular = np.linalg.svd(weighted, compute_uv=False)
    rank = int(np.sum(singular > tol.independence_tol * singular.max()))
    margin = support_independence_margin(geom, support)
    clifford_like = margin <= tol.independence_tol

    moments_l = np.array([integrate(geom, l) for l in support.l])
    moments_f = np.array([integrate(geom, f) for f in support.f])
    minkowski = float(np.max(np.abs(moments_l - H * moments_f)))

    worst_Q = max(d.Q_value for d in directions)
    inequality_holds = all(d.slack >= -slack_tol for d in directions)
    negative = top < -tau_strict
    certified = negative and rank == len(basis) and inequality_holds

    flags = []
    if clifford_like:
        flags.append(CLIFFORD_FLAG)
    if support.c == 0.0:
        flags.append(MINIMAL_FLAG)

    warnings = list(support.warnings)
    if not negative:
        warnings.append(
            f"largest Q on the admissible span is {top:.3e} >= -{tau_strict:.1e}: "
            f"discretization-suspect, rerun at a finer grid"
        )
    if rank < len(basis):
        warnings.append(f"test functions h_u span only {rank} of {len(basis)} dimensions")
    if not inequality_holds:
        warnings.append(f"inequality Q <= -n int (f_u + H l_u)^2 violated beyond {slack_tol:.1e}")
    for message in warnings:
        logger.warning(f"Certificate: {message}")

    certificate = TheoremCertificate(
        n=n, H=H, coefficient=support.c, area=area,
        admissible_dimension=len(basis), directions=directions, worst_Q=worst_Q,
        tau_strict=tau_strict, tau_adm=tau_adm, slack_tol=slack_tol,
        test_space_rank=rank, support_independence_margin=margin, clifford_like=clifford_like,
        inequality_holds=inequality_holds, certified=certified,
        lower_bound=len(basis) if certified else 0,
        umbilicity_gap=gap, cauchy_schwarz_min=geom.cauchy_schwarz_min,
        minkowski_residual=minkowski, flags=flags, warnings=warnings,
    )
    logger.info(f"Certificate: {certificate.verdict} (worst Q {worst_Q:.6g}, span max {top:.6g})")
    return certificate
