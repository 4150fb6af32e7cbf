"""
Date: 18-10-2026
Surface analysis engine. Owns one sampled torus, caches its geometry, discrete forms,
Jacobi form and support functions, and runs the index and verification batteries.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from .config import (
    CONVERGENCE_RATIO_MAX,
    CONVERGENCE_RATIO_MIN,
    DEFAULT_TAU_DISCRETE,
    DEFAULT_TAU_EXACT,
    DISCRETE_EIGEN_COUNT,
    EXPANSION_TOL,
    IDENTITY_TOL,
    LEMMA_TOL,
    POTENTIAL_QUADRATURE,
    STALL_RATIO,
    VERIFY_FD_FACTOR,
)
from .geometry import (
    ImmersionGrid,
    SurfaceGeometry,
    clifford_scalars,
    compute_surface_geometry,
    validate_immersion,
)
from .laplace import DiscreteForms, assemble_forms, identity_residuals
from .schema import (
    CliffordSpec,
    ImmersionResiduals,
    IndexReport,
    ResidualReport,
    ResidualRow,
    SpectrumReport,
    TheoremCertificate,
    Tolerances,
)
from .spectrum import (
    JacobiForm,
    assemble_jacobi,
    clifford_spectrum_exact,
    discrete_spectrum,
    index_discrete,
    index_window,
    weak_index_exact,
)
from .testfn import (
    SupportFunctions,
    build_support_functions,
    jacobi_expansion_residual,
    lemma1_residual,
    theorem_certificate,
)

logger = logging.getLogger(__name__)

VERIFY_TARGETS = ("identities", "lemma", "expansion", "theorem")
ROUNDOFF_FLOOR = 1e-10


class SurfaceAnalyzer:
    """
    Class to analyze one sampled torus in S^3.
    """
    def __init__(
        self,
        grid: ImmersionGrid,
        flip_normal: bool = False,
        cmc_tol: Optional[float] = None,
        potential_rule: str = POTENTIAL_QUADRATURE
    ):
        """
        Initialize the SurfaceAnalyzer.

        :param grid: Sampled immersion.
        :param flip_normal: Use the opposite orientation of the normal.
        :param cmc_tol: Override for the CMC tolerance.
        :param potential_rule: Potential quadrature of the Jacobi form.
        """
        self.grid = grid
        self.flip_normal = flip_normal
        self.cmc_tol = cmc_tol
        self.potential_rule = potential_rule

        self._geometry = None
        self._forms = None
        self._jacobi = None
        self._support = None

    @property
    def geometry(self) -> SurfaceGeometry:
        if self._geometry is None:
            self._geometry = compute_surface_geometry(self.grid, self.flip_normal, self.cmc_tol)
        return self._geometry

    @property
    def forms(self) -> DiscreteForms:
        if self._forms is None:
            self._forms = assemble_forms(self.geometry)
        return self._forms

    @property
    def jacobi(self) -> JacobiForm:
        if self._jacobi is None:
            self._jacobi = assemble_jacobi(self.geometry, self.forms, self.potential_rule)
        return self._jacobi

    @property
    def support(self) -> SupportFunctions:
        if self._support is None:
            self._support = build_support_functions(self.geometry)
        return self._support

    @property
    def basis(self) -> np.ndarray:
        return np.eye(self.support.dimension)

    def validate(self) -> ImmersionResiduals:
        return validate_immersion(self.grid)

    def index(self, tau: float = DEFAULT_TAU_DISCRETE) -> IndexReport:
        """
        Weak and strong index intervals by inertia of the discrete Jacobi form.

        :param tau: Zero tolerance.
        :return: IndexReport.
        """
        return index_discrete(self.jacobi.matrix, self.jacobi.mass, tau)

    def spectrum(self, count: int = DISCRETE_EIGEN_COUNT) -> SpectrumReport:
        return discrete_spectrum(self.geometry, self.jacobi, count, family=self.grid.label)

    def certificate(self, tolerances: Optional[Tolerances] = None) -> TheoremCertificate:
        return theorem_certificate(self.geometry, self.forms, self.jacobi, self.support, tolerances)

    def residuals(self, target: str) -> Dict[str, List[float]]:
        """
        Per-direction residuals of one battery, keyed by check name.

        :param target: "identities", "lemma" or "expansion".
        :return: Dictionary check -> residual per ambient basis direction.
        """
        geom, forms, support = self.geometry, self.forms, self.support
        if target == "identities":
            pairs = [identity_residuals(geom, forms, u) for u in self.basis]
            return {
                "laplacian_position": [p[0] for p in pairs],
                "laplacian_normal": [p[1] for p in pairs],
            }
        if target == "lemma":
            return {"divergence_identity": [lemma1_residual(geom, forms, support, u) for u in self.basis]}
        if target == "expansion":
            return {"jacobi_expansion": [jacobi_expansion_residual(geom, forms, support, u) for u in self.basis]}
        raise ValueError(f"Unknown residual battery '{target}', expected identities, lemma or expansion")


def residual_tolerance(target: str, analyzer: SurfaceAnalyzer) -> float:
    """
    Default tolerance of a battery. Difference-derived samples carry O(h^2) derivative
    error, so their tolerance grows as VERIFY_FD_FACTOR * h^2 (times the area for the
    integral identity).

    :param target: "identities", "lemma" or "expansion".
    :param analyzer: Analyzer of the grid being checked.
    :return: Tolerance.
    """
    base = {"identities": IDENTITY_TOL, "lemma": LEMMA_TOL, "expansion": EXPANSION_TOL}[target]
    grid = analyzer.grid
    if grid.derivative_source != "finite_difference":
        return base
    scaled = VERIFY_FD_FACTOR * grid.spacing ** 2
    if target == "lemma":
        scaled *= analyzer.geometry.area
    return max(base, scaled)


def convergence_report(
    target: str,
    fine: SurfaceAnalyzer,
    coarse: Optional[SurfaceAnalyzer] = None,
    tolerance: Optional[float] = None
) -> ResidualReport:
    """
    Residual table at the fine grid, with observed refinement ratios against a coarse grid.

    A check passes when its residual is within tolerance and, if the coarse residual is
    above roundoff, the ratio is not below the second-order band. Ratios under STALL_RATIO
    are diagnosed as non-CMC contamination.

    :param target: Battery name.
    :param fine: Analyzer at the requested grid.
    :param coarse: Analyzer at half resolution.
    :param tolerance: Residual tolerance override.
    :return: ResidualReport.
    """
    tol = residual_tolerance(target, fine) if tolerance is None else tolerance
    fine_values = fine.residuals(target)
    coarse_values = coarse.residuals(target) if coarse is not None else {}

    rows = []
    stalled = False
    for check, values in fine_values.items():
        for direction, value in enumerate(values):
            coarse_value = coarse_values[check][direction] if coarse_values else None
            ratio = None
            if coarse_value is not None and value > ROUNDOFF_FLOOR and coarse_value > ROUNDOFF_FLOOR:
                ratio = coarse_value / value
            if ratio is not None and ratio < STALL_RATIO:
                stalled = True
            passed = value <= tol and (ratio is None or ratio >= CONVERGENCE_RATIO_MIN)
            rows.append(ResidualRow(
                check=check, direction=direction, residual=value, coarse_residual=coarse_value,
                ratio=ratio, tolerance=tol, passed=passed,
            ))

    geom = fine.geometry
    warnings = list(fine.support.warnings)
    ratios = [row.ratio for row in rows if row.ratio is not None]
    if ratios and max(ratios) > CONVERGENCE_RATIO_MAX:
        warnings.append(f"refinement ratio {max(ratios):.3g} above the second-order band")
    diagnosis = None
    if stalled:
        diagnosis = (
            f"stall: residuals do not shrink under refinement; input is not CMC "
            f"(max|H - mean H| = {geom.H_deviation:.3e})"
        )
        logger.warning(diagnosis)

    return ResidualReport(
        target=target, grid=fine.grid.n_u, rows=rows, diagnosis=diagnosis, warnings=warnings,
    )


def exact_clifford_row(spec: CliffordSpec, tau: float = DEFAULT_TAU_EXACT) -> Dict[str, float]:
    """
    One sweep row from the closed-form spectrum.

    :param spec: Clifford parameters.
    :param tau: Zero tolerance.
    :return: Row with r2, H, A2, weak_index, strong_index, lambda_min.
    """
    H, A2, _ = clifford_scalars(spec)
    report = clifford_spectrum_exact(spec, window=index_window(0.0, tau))
    index = weak_index_exact(report, tau)
    return {
        "r2": spec.r2,
        "H": H,
        "A2": A2,
        "weak_index": index.weak_lo,
        "strong_index": index.strong_lo,
        "lambda_min": report.lambda_min,
    }


def clifford_sweep(
    p: int,
    q: int,
    r2_values: Sequence[float],
    tau: float = DEFAULT_TAU_EXACT,
    workers: int = 1,
    row_builder: Callable[[CliffordSpec, float], Dict[str, float]] = exact_clifford_row
) -> pd.DataFrame:
    """
    Tabulate the indices along a family of Clifford hypersurfaces, rows in parameter order.

    :param p: First sphere dimension.
    :param q: Second sphere dimension.
    :param r2_values: Values of r^2 in (0, 1).
    :param tau: Zero tolerance.
    :param workers: Thread pool size.
    :param row_builder: Row function.
    :return: DataFrame with columns r2, H, A2, weak_index, strong_index, lambda_min.
    """
    specs = [CliffordSpec.from_r2(p, q, r2) for r2 in r2_values]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(lambda s: row_builder(s, tau), specs))
    df = pd.DataFrame(rows, columns=["r2", "H", "A2", "weak_index", "strong_index", "lambda_min"])
    logger.info(f"Swept {len(df)} Clifford spec(s) p={p} q={q}")
    return df
