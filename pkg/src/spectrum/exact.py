"""
Date: 18-10-2026
Closed-form Jacobi spectra of the isoparametric families and the index counts they imply.
J = -Delta - |A|^2 - n; on Clifford and umbilical hypersurfaces |A|^2 is constant, so the
spectrum is the Laplace spectrum shifted by -(|A|^2 + n).
"""

import logging
import math
from typing import List, Optional

from ..config import CMC_TOL, DEFAULT_TAU_EXACT, EXACT_ZERO_TOL, INDEX_WINDOW_MARGIN
from ..errors import NotMinimalError, UnsupportedFamilyError
from ..geometry.families import clifford_scalars, umbilical_scalars
from ..schema import (
    CliffordSpec,
    IndexReport,
    SimonsVerdict,
    SpectrumEntry,
    SpectrumReport,
    UmbilicalSpec,
)

logger = logging.getLogger(__name__)

EXACT_FAMILIES = ("clifford", "umbilical")
EQUATOR_FLAG = "totally geodesic equator excluded from the bound's scope"


def harmonic_multiplicity(d: int, k: int) -> int:
    """
    Dimension of degree-k spherical harmonics on S^d: C(d+k, k) - C(d+k-2, k-2).

    :param d: Sphere dimension.
    :param k: Degree.
    :return: Multiplicity.
    """
    if k < 0:
        return 0
    lower = math.comb(d + k - 2, k - 2) if k >= 2 else 0
    return math.comb(d + k, k) - lower


def _snap(value: float) -> float:
    return 0.0 if abs(value) < EXACT_ZERO_TOL else value


def _sorted_entries(entries: List[SpectrumEntry]) -> List[SpectrumEntry]:
    return sorted(entries, key=lambda e: (e.eigenvalue, e.label))


def clifford_spectrum_exact(spec: CliffordSpec, window: float = 0.0) -> SpectrumReport:
    """
    Enumerate lambda_{k,m} = k(k+p-1)/r^2 + m(m+q-1)/s^2 - |A|^2 - n below the window.

    lambda increases strictly in k and in m, so the scan stops at the first degree
    whose m = 0 value already reaches the window.

    :param spec: Clifford parameters.
    :param window: Upper bound (exclusive) on reported eigenvalues.
    :return: SpectrumReport.
    """
    if window < 0:
        raise ValueError(f"window must be non-negative, got {window}")
    H, A2, _ = clifford_scalars(spec)
    r2, s2, p, q = spec.r2, 1.0 - spec.r2, spec.p, spec.q
    shift = A2 + spec.n

    def eigenvalue(k: int, m: int) -> float:
        return _snap(k * (k + p - 1) / r2 + m * (m + q - 1) / s2 - shift)

    entries = []
    cutoff = 0
    k = 0
    while eigenvalue(k, 0) < window:
        m = 0
        while eigenvalue(k, m) < window:
            entries.append(SpectrumEntry(
                eigenvalue=eigenvalue(k, m),
                multiplicity=harmonic_multiplicity(p, k) * harmonic_multiplicity(q, m),
                label=(k, m),
            ))
            cutoff = max(cutoff, k, m)
            m += 1
        k += 1

    logger.info(f"Clifford p={p} q={q} r^2={r2:.6g}: {len(entries)} eigenvalue(s) below {window}")
    return SpectrumReport(
        family="clifford", entries=_sorted_entries(entries), cutoff=cutoff, window=window,
        H=H, A2=A2, n=spec.n,
    )


def umbilical_spectrum_exact(spec: UmbilicalSpec, window: float = 0.0) -> SpectrumReport:
    """
    Enumerate lambda_k = k(k+n-1)/rho^2 - nH^2 - n below the window; lambda_1 = 0 always.

    :param spec: Umbilical parameters.
    :param window: Upper bound (exclusive) on reported eigenvalues.
    :return: SpectrumReport.
    """
    if window < 0:
        raise ValueError(f"window must be non-negative, got {window}")
    H, A2 = umbilical_scalars(spec)
    n, rho2 = spec.n, spec.rho * spec.rho

    entries = []
    k = 0
    while True:
        value = _snap(k * (k + n - 1) / rho2 - A2 - n)
        if value >= window:
            break
        entries.append(SpectrumEntry(eigenvalue=value, multiplicity=harmonic_multiplicity(n, k), label=(k,)))
        k += 1

    return SpectrumReport(
        family="umbilical", entries=_sorted_entries(entries), cutoff=max(k - 1, 0), window=window,
        H=H, A2=A2, n=n,
    )


def index_window(window: float, tau: float) -> float:
    """Enumeration window wide enough to see every eigenvalue the tau interval can touch."""
    return max(window, tau) + INDEX_WINDOW_MARGIN


def weak_index_exact(report: SpectrumReport, tau: float = DEFAULT_TAU_EXACT) -> IndexReport:
    """
    Weak and strong indices from an exact spectrum of a constant-|A|^2 family.

    The constant function is an eigenfunction there and is the only mode the mean-zero
    constraint removes. Eigenvalues in (-tau, tau) widen the intervals; exact zeros are
    reported as nullity and never counted negative.

    :param report: Exact spectrum.
    :param tau: Zero tolerance.
    :return: IndexReport.
    """
    if not report.constant_A2 or report.family not in EXACT_FAMILIES:
        raise UnsupportedFamilyError(
            f"Exact weak index needs a closed-form constant-|A|^2 spectrum, got '{report.family}'; "
            f"use the discrete path"
        )
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")

    strong_lo = sum(e.multiplicity for e in report.entries if e.eigenvalue < -tau)
    strong_hi = sum(e.multiplicity for e in report.entries if e.eigenvalue < tau)
    constant = next((e for e in report.entries if not any(e.label)), None)
    weak_lo = strong_lo - (1 if constant is not None and constant.eigenvalue < -tau else 0)
    weak_hi = strong_hi - (1 if constant is not None and constant.eigenvalue < tau else 0)

    notes = []
    nullity: Optional[int] = None
    if report.window > 0:
        nullity = sum(e.multiplicity for e in report.entries if e.eigenvalue == 0.0)
    else:
        notes.append("zero modes not enumerated (window = 0); nullity unknown")
    if report.window < tau:
        notes.append(f"enumeration window {report.window} is below tau {tau}; upper ends may be low")

    return IndexReport(
        weak_lo=weak_lo, weak_hi=weak_hi, strong_lo=strong_lo, strong_hi=strong_hi,
        tau=tau, method="exact", nullity=nullity, notes=notes,
    )


def simons_check(report: SpectrumReport, tol: float = EXACT_ZERO_TOL) -> SimonsVerdict:
    """
    Simons' bound lambda_min <= -2n for compact minimal hypersurfaces.

    The totally geodesic equator has lambda_min = -n; it gets verdict false and a flag
    instead of an error.

    :param report: Exact or discrete spectrum carrying H, |A|^2 and n.
    :param tol: Slack on the bound.
    :return: SimonsVerdict.
    """
    if report.H is None or abs(report.H) > CMC_TOL:
        raise NotMinimalError(f"Simons' bound needs a minimal hypersurface, got H = {report.H}")
    if not report.entries:
        raise ValueError("Spectrum report has no entries; widen the window")

    bound = -2.0 * report.n
    lambda_min = report.lambda_min
    verdict = lambda_min <= bound + tol
    flag = None
    if report.A2 is not None and abs(report.A2) <= tol:
        flag = EQUATOR_FLAG
        logger.warning(f"Simons check on a totally geodesic surface: lambda_min = {lambda_min:.6g}")
    return SimonsVerdict(lambda_min=lambda_min, bound=bound, verdict=verdict, flag=flag)
