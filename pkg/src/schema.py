"""
Date: 18-10-2026
Schema definitions for validated parameters and report values.
Uses Pydantic for specs and reports; array-carrying values live as slotted dataclasses
next to the code that builds them.
"""

import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import (
    CAUCHY_SCHWARZ_TOL,
    INDEPENDENCE_TOL,
    SLACK_FACTOR,
    TAU_ADM_FACTOR,
    TAU_STRICT_FACTOR,
    UMBILIC_TOL,
)


class CliffordSpec(BaseModel):
    """
    Product S^p(r) x S^q(s) inside S^{p+q+1}, r^2 + s^2 = 1.
    """
    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    q: int = Field(ge=1)
    r: float = Field(gt=0.0, lt=1.0)

    @classmethod
    def from_r2(cls, p: int, q: int, r2: float) -> "CliffordSpec":
        if not 0.0 < r2 < 1.0:
            raise ValueError(f"r2 must lie in (0, 1), got {r2}")
        return cls(p=p, q=q, r=math.sqrt(r2))

    @property
    def s(self) -> float:
        return math.sqrt(1.0 - self.r * self.r)

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def r2(self) -> float:
        return self.r * self.r


class UmbilicalSpec(BaseModel):
    """
    Geodesic sphere of S^{n+1} with Euclidean radius rho; rho = 1 is the equator.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2)
    rho: float = Field(gt=0.0, le=1.0)

    @property
    def c(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.rho * self.rho))


class SpectrumEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    eigenvalue: float
    multiplicity: int = Field(ge=1)
    label: Tuple[int, ...]


class SpectrumReport(BaseModel):
    """
    Eigenvalues of J = -Delta - |A|^2 - n below a window, nondecreasing.
    """
    model_config = ConfigDict(frozen=True)

    family: str
    entries: List[SpectrumEntry] = []
    cutoff: int = 0
    window: float = 0.0
    H: Optional[float] = None
    A2: Optional[float] = None
    n: int = 2
    constant_A2: bool = True

    @model_validator(mode="after")
    def _check_order(self) -> "SpectrumReport":
        values = [e.eigenvalue for e in self.entries]
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("Spectrum entries must be nondecreasing")
        return self

    @property
    def lambda_min(self) -> float:
        return self.entries[0].eigenvalue if self.entries else math.inf

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)


class IndexReport(BaseModel):
    """
    Certified intervals for the weak (volume-preserving) and strong indices under zero tolerance tau.
    """
    model_config = ConfigDict(frozen=True)

    weak_lo: Optional[int] = None
    weak_hi: Optional[int] = None
    strong_lo: Optional[int] = None
    strong_hi: Optional[int] = None
    tau: float = 0.0
    method: str = "exact"
    factorization: Optional[str] = None
    nullity: Optional[int] = None
    notes: List[str] = []

    @model_validator(mode="after")
    def _check_intervals(self) -> "IndexReport":
        if self.weak_lo is not None and self.weak_hi is not None and self.weak_lo > self.weak_hi:
            raise ValueError(f"weak_lo {self.weak_lo} exceeds weak_hi {self.weak_hi}")
        if self.strong_lo is not None and self.strong_hi is not None and self.strong_lo > self.strong_hi:
            raise ValueError(f"strong_lo {self.strong_lo} exceeds strong_hi {self.strong_hi}")
        return self

    @property
    def marginal(self) -> bool:
        return self.weak_lo != self.weak_hi or self.strong_lo != self.strong_hi

    def merge(self, other: "IndexReport") -> "IndexReport":
        """
        Combine a weak-only and a strong-only report computed with the same tau.

        :param other: Report carrying the fields missing here.
        :return: Combined report.
        """
        update = {
            key: getattr(other, key)
            for key in ("weak_lo", "weak_hi", "strong_lo", "strong_hi", "factorization", "nullity")
            if getattr(self, key) is None and getattr(other, key) is not None
        }
        update["notes"] = list(self.notes) + [n for n in other.notes if n not in self.notes]
        return self.model_copy(update=update)


class SimonsVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    lambda_min: float
    bound: float
    verdict: bool
    flag: Optional[str] = None


class ImmersionResiduals(BaseModel):
    """
    Residuals of the immersion invariants; fd_consistency is O(h^2) for consistent data.
    """
    model_config = ConfigDict(frozen=True)

    unit_sphere: float
    tangency_u: float
    tangency_v: float
    fd_consistency: float
    derivative_source: str
    grid: Tuple[int, int]

    def passes(self, tol: float) -> bool:
        return max(self.unit_sphere, self.tangency_u, self.tangency_v) <= tol


class ResidualRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    check: str
    direction: int
    residual: float
    coarse_residual: Optional[float] = None
    ratio: Optional[float] = None
    tolerance: float
    passed: bool


class ResidualReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    target: str
    grid: int
    rows: List[ResidualRow] = []
    diagnosis: Optional[str] = None
    warnings: List[str] = []

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def max_residual(self) -> float:
        return max((row.residual for row in self.rows), default=0.0)


class Tolerances(BaseModel):
    """
    Certificate tolerances. The strict and admissibility thresholds scale with the surface area.
    """
    model_config = ConfigDict(frozen=True)

    tau_strict_factor: float = Field(default=TAU_STRICT_FACTOR, gt=0.0)
    tau_adm_factor: float = Field(default=TAU_ADM_FACTOR, gt=0.0)
    slack_factor: float = Field(default=SLACK_FACTOR, gt=0.0)
    umbilic_tol: float = Field(default=UMBILIC_TOL, gt=0.0)
    independence_tol: float = Field(default=INDEPENDENCE_TOL, gt=0.0)


class DirectionEvidence(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: Tuple[float, ...]
    mean_integral: float
    Q_value: float
    rhs: float
    slack: float


class TheoremCertificate(BaseModel):
    """
    Evidence that the quadratic form is negative definite on the admissible test space.
    """
    model_config = ConfigDict(frozen=True)

    n: int
    H: float
    coefficient: float
    area: float
    admissible_dimension: int
    directions: List[DirectionEvidence] = []
    worst_Q: float
    tau_strict: float
    tau_adm: float
    slack_tol: float
    test_space_rank: int
    support_independence_margin: float
    clifford_like: bool
    inequality_holds: bool
    certified: bool
    lower_bound: int
    umbilicity_gap: float
    cauchy_schwarz_min: float
    minkowski_residual: float = 0.0
    flags: List[str] = []
    warnings: List[str] = []

    @model_validator(mode="after")
    def _check_bound(self) -> "TheoremCertificate":
        if self.cauchy_schwarz_min < -CAUCHY_SCHWARZ_TOL:
            raise ValueError(f"|A|^2 - nH^2 negative ({self.cauchy_schwarz_min:.3e})")
        return self

    @property
    def verdict(self) -> str:
        if not self.certified:
            return "not certified"
        return f"ind_T >= {self.lower_bound}"


class RunReport(BaseModel):
    """
    One CLI invocation: command echo, parameters, effective settings, results.
    """
    model_config = ConfigDict(frozen=True)

    command: str
    params: Dict[str, Any] = {}
    settings: Dict[str, Any] = {}
    results: Dict[str, Any] = {}
    timing_ms: Optional[float] = None
