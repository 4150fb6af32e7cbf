"""
Date: 18-10-2026
Command-line front end: index computations, spectra, verification batteries, radius sweeps
and sample-file validation.

Exit codes: 0 success, 1 failed check, 2 usage or validation error, 3 degenerate geometry,
4 theorem hypothesis not met, 5 file I/O.
"""

import argparse
import io
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from . import __version__
from .analyzer import VERIFY_TARGETS, SurfaceAnalyzer, clifford_sweep, convergence_report
from .config import (
    CONVERGENCE_GRID,
    DEFAULT_GRID,
    DEFAULT_TAU_DISCRETE,
    DEFAULT_TAU_EXACT,
    DEFAULT_WINDOW,
    DISCRETE_EIGEN_COUNT,
    FLOAT_FORMAT,
    IMMERSION_TOL,
    MIN_GRID,
    POTENTIAL_QUADRATURE,
    SLACK_FACTOR,
    TAU_ADM_FACTOR,
    TAU_STRICT_FACTOR,
    UMBILIC_TOL,
    VERIFY_FD_FACTOR,
)
from .data_loader import load_immersion_file, save_immersion_file
from .errors import (
    DegenerateImmersionError,
    ImmersionFileError,
    TheoremHypothesisError,
    UnsupportedFamilyError,
)
from .geometry import (
    ImmersionGrid,
    clifford_immersion,
    coarsen_grid,
    control_immersion,
    umbilical_scalars,
)
from .schema import CliffordSpec, RunReport, Tolerances, UmbilicalSpec
from .spectrum import (
    clifford_spectrum_exact,
    index_window,
    simons_check,
    umbilical_spectrum_exact,
    weak_index_exact,
)
from .utils.misc import dumps_report, parse_float_list
from .visualizations import save_index_jump

logger = logging.getLogger(__name__)

FAMILIES = ("clifford", "umbilical", "control-noncmc", "file")
EXACT_ONLY = ("umbilical",)
DISCRETE_ONLY = ("control-noncmc", "file")


class CheckFailed(Exception):
    """Carries a finished report whose checks did not pass."""
    def __init__(self, report: RunReport):
        self.report = report
        super().__init__("check failed")


# ----------------------------- Families -----------------------------

def _family_params(args: argparse.Namespace, family: str) -> Dict[str, Any]:
    if family == "clifford":
        return {"family": family, "p": args.p, "q": args.q, "r2": args.r2}
    if family == "umbilical":
        return {"family": family, "n": args.n, "rho": args.rho}
    if family == "file":
        return {"family": family, "file": str(args.file) if args.file else None}
    return {"family": family}


def _clifford_spec(args: argparse.Namespace) -> CliffordSpec:
    return CliffordSpec.from_r2(args.p, args.q, args.r2)


def _umbilical_spec(args: argparse.Namespace) -> UmbilicalSpec:
    return UmbilicalSpec(n=args.n, rho=args.rho)


def _build_grid(args: argparse.Namespace, family: str, size: int) -> ImmersionGrid:
    if family == "clifford":
        return clifford_immersion(_clifford_spec(args), size, size)
    if family == "control-noncmc":
        return control_immersion(size, size)
    if family == "file":
        if not args.file:
            raise ValueError("--file is required for the file family")
        return load_immersion_file(args.file)
    raise UnsupportedFamilyError(f"'{family}' has no sampled torus; use the exact method")


def _analyzer(args: argparse.Namespace, family: str, size: int) -> SurfaceAnalyzer:
    return SurfaceAnalyzer(
        _build_grid(args, family, size),
        flip_normal=args.flip_normal,
        potential_rule=args.potential,
    )


def _coarse_analyzer(
    args: argparse.Namespace, family: str, fine: SurfaceAnalyzer
) -> Optional[SurfaceAnalyzer]:
    grid = fine.grid
    if grid.n_u // 2 < MIN_GRID or grid.n_v // 2 < MIN_GRID:
        return None
    if family != "file":
        return _analyzer(args, family, grid.n_u // 2)
    if grid.n_u % 2 or grid.n_v % 2:
        logger.warning(f"Sample grid {grid.n_u}x{grid.n_v} has an odd size; skipping the refinement run")
        return None
    return SurfaceAnalyzer(coarsen_grid(grid), flip_normal=args.flip_normal, potential_rule=args.potential)


def _method(args: argparse.Namespace, family: str) -> str:
    method = args.method or ("exact" if family in ("clifford",) + EXACT_ONLY else "discrete")
    if method == "exact" and family in DISCRETE_ONLY:
        raise UnsupportedFamilyError(f"No closed-form spectrum for '{family}'; use --discrete")
    if method == "discrete" and family in EXACT_ONLY:
        raise UnsupportedFamilyError(f"'{family}' is not a torus in S^3; use --exact")
    return method


def _exact_spectrum(args: argparse.Namespace, family: str, window: float):
    if family == "clifford":
        return clifford_spectrum_exact(_clifford_spec(args), window)
    return umbilical_spectrum_exact(_umbilical_spec(args), window)


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return Tolerances(
        tau_strict_factor=args.tau_strict,
        tau_adm_factor=args.tau_adm,
        slack_factor=args.slack,
        umbilic_tol=args.umbilic_tol,
    )


def _geometry_summary(analyzer: SurfaceAnalyzer) -> Dict[str, Any]:
    geom = analyzer.geometry
    return {
        "H_mean": geom.H_mean,
        "H_deviation": geom.H_deviation,
        "H_constant": geom.H_constant,
        "cmc_tol": geom.cmc_tol,
        "A2_mean": float(np.mean(geom.A2)),
        "area": geom.area,
        "umbilicity_gap": geom.umbilicity_gap,
        "cauchy_schwarz_min": geom.cauchy_schwarz_min,
        "derivative_source": analyzer.grid.derivative_source,
        "orientation": "flipped" if geom.flipped else "positive",
    }


# ----------------------------- Commands -----------------------------

def cmd_index(args: argparse.Namespace) -> RunReport:
    family = args.family
    method = _method(args, family)
    params = _family_params(args, family)

    if method == "exact":
        tau = DEFAULT_TAU_EXACT if args.tau is None else args.tau
        spectrum = _exact_spectrum(args, family, index_window(args.window, tau))
        index = weak_index_exact(spectrum, tau)
        settings = {"method": method, "tau": tau, "window": spectrum.window}
        results = {
            "index": index.model_dump(),
            "H": spectrum.H,
            "A2": spectrum.A2,
            "n": spectrum.n,
            "lambda_min": spectrum.lambda_min,
        }
    else:
        tau = DEFAULT_TAU_DISCRETE if args.tau is None else args.tau
        analyzer = _analyzer(args, family, args.grid)
        index = analyzer.index(tau)
        settings = {
            "method": method, "tau": tau, "grid": analyzer.grid.n_u,
            "potential": args.potential, "flip_normal": args.flip_normal,
        }
        results = {"index": index.model_dump(), "geometry": _geometry_summary(analyzer)}

    return RunReport(command="index", params=params, settings=settings, results=results)


def cmd_spectrum(args: argparse.Namespace) -> RunReport:
    family = args.family
    method = _method(args, family)
    params = _family_params(args, family)

    if method == "exact":
        spectrum = _exact_spectrum(args, family, args.window)
        settings = {"method": method, "window": args.window}
    else:
        analyzer = _analyzer(args, family, args.grid)
        spectrum = analyzer.spectrum(args.count)
        settings = {
            "method": method, "grid": analyzer.grid.n_u, "count": args.count,
            "potential": args.potential, "flip_normal": args.flip_normal,
        }

    results: Dict[str, Any] = {"spectrum": spectrum.model_dump()}
    if args.simons:
        results["simons"] = simons_check(spectrum).model_dump()
    return RunReport(command="spectrum", params=params, settings=settings, results=results)


def cmd_verify(args: argparse.Namespace) -> RunReport:
    family = args.family
    params = _family_params(args, family)
    params["target"] = args.target

    if family == "umbilical":
        spec = _umbilical_spec(args)
        H, A2 = umbilical_scalars(spec)
        if args.target == "theorem":
            raise TheoremHypothesisError(A2 - spec.n * H * H)
        raise UnsupportedFamilyError("Umbilical spheres have no sampled torus; verification needs a discrete family")

    fine = _analyzer(args, family, args.grid)
    settings: Dict[str, Any] = {
        "grid": fine.grid.n_u, "potential": args.potential, "flip_normal": args.flip_normal,
    }

    if args.target == "theorem":
        tolerances = _tolerances(args)
        certificate = fine.certificate(tolerances)
        settings["tolerances"] = tolerances.model_dump()
        results = {
            "verdict": certificate.verdict,
            "certificate": certificate.model_dump(),
            "geometry": _geometry_summary(fine),
        }
        report = RunReport(command="verify", params=params, settings=settings, results=results)
        if not certificate.certified:
            raise CheckFailed(report)
        return report

    coarse = _coarse_analyzer(args, family, fine) if args.convergence else None
    if coarse is not None:
        settings["coarse_grid"] = coarse.grid.n_u
    residuals = convergence_report(args.target, fine, coarse, args.tol)
    settings["tolerance"] = residuals.rows[0].tolerance if residuals.rows else args.tol
    if args.tol is None and fine.grid.derivative_source == "finite_difference":
        settings["tolerance_rule"] = f"max(default, {VERIFY_FD_FACTOR:g} h^2) for difference derivatives"

    results = {
        "passed": residuals.passed,
        "max_residual": residuals.max_residual,
        "residuals": residuals.model_dump(),
        "geometry": _geometry_summary(fine),
    }
    report = RunReport(command="verify", params=params, settings=settings, results=results)
    if not residuals.passed:
        raise CheckFailed(report)
    return report


def _sweep_values(args: argparse.Namespace) -> List[float]:
    if args.r2_values:
        return parse_float_list(args.r2_values)
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    return [float(x) for x in np.linspace(args.r2_min, args.r2_max, args.steps)]


def cmd_sweep(args: argparse.Namespace) -> RunReport:
    values = _sweep_values(args)
    tau = DEFAULT_TAU_EXACT if args.tau is None else args.tau
    df = clifford_sweep(args.p, args.q, values, tau=tau, workers=args.workers)
    n = args.p + args.q

    if args.out:
        df.to_csv(args.out, index=False, float_format=FLOAT_FORMAT)
        logger.info(f"Wrote sweep table to {args.out}")
    if args.plot:
        save_index_jump(df, args.plot, n=n)
        logger.info(f"Wrote sweep plot to {args.plot}")

    below_theorem = int((df["weak_index"] < n + 1).sum())
    below_clifford = int((df["weak_index"] < n + 2).sum())
    params = {"family": "clifford", "p": args.p, "q": args.q, "r2_values": values}
    settings = {"method": "exact", "tau": tau, "workers": args.workers}
    results = {
        "rows": df.to_dict(orient="records"),
        "violations_n_plus_1": below_theorem,
        "violations_n_plus_2": below_clifford,
        "csv": str(args.out) if args.out else None,
        "plot": str(args.plot) if args.plot else None,
    }
    report = RunReport(command="sweep", params=params, settings=settings, results=results)
    if below_theorem or below_clifford:
        raise CheckFailed(report)
    return report


def cmd_validate(args: argparse.Namespace) -> RunReport:
    family = args.family
    params = _family_params(args, family)
    analyzer = _analyzer(args, family, args.grid)
    residuals = analyzer.validate()

    if args.export:
        save_immersion_file(analyzer.grid, args.export, include_derivatives=not args.positions_only)

    passed = residuals.passes(args.tol)
    results = {
        "passed": passed,
        "residuals": residuals.model_dump(),
        "geometry": _geometry_summary(analyzer),
        "export": str(args.export) if args.export else None,
    }
    settings = {"tol": args.tol, "grid": analyzer.grid.n_u, "flip_normal": args.flip_normal}
    report = RunReport(command="validate", params=params, settings=settings, results=results)
    if not passed:
        raise CheckFailed(report)
    return report


COMMANDS = {
    "index": cmd_index,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


# ----------------------------- Output -----------------------------

def _primary_table(report: RunReport) -> pd.DataFrame:
    results = report.results
    if "rows" in results:
        return pd.DataFrame(results["rows"])
    if "residuals" in results and isinstance(results["residuals"], dict) and "rows" in results["residuals"]:
        return pd.DataFrame(results["residuals"]["rows"])
    if "spectrum" in results:
        return pd.DataFrame(results["spectrum"]["entries"])
    if "certificate" in results:
        return pd.DataFrame(results["certificate"]["directions"])
    if "index" in results:
        return pd.DataFrame([{k: v for k, v in results["index"].items() if k != "notes"}])
    return pd.DataFrame([results.get("residuals", {})])


def render(report: RunReport, fmt: str) -> str:
    """
    Serialize a report.

    :param report: Run report.
    :param fmt: "json", "csv" or "text".
    :return: Output text.
    """
    if fmt == "json":
        return dumps_report(report.model_dump()) + "\n"
    table = _primary_table(report)
    if fmt == "csv":
        buffer = io.StringIO()
        table.to_csv(buffer, index=False, float_format=FLOAT_FORMAT)
        return buffer.getvalue()

    lines = [f"command: {report.command}"]
    lines += [f"{key}: {value}" for key, value in report.params.items()]
    lines += [f"{key}: {value}" for key, value in report.settings.items()]
    for key, value in report.results.items():
        if not isinstance(value, (dict, list)):
            lines.append(f"{key}: {value}")
    if not table.empty:
        lines.append("")
        lines.append(table.to_string(index=False))
    return "\n".join(lines) + "\n"


def _emit(report: RunReport, args: argparse.Namespace) -> None:
    text = render(report, args.format)
    target = getattr(args, "report", None)
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)


# ----------------------------- Parser -----------------------------

def _add_family_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, default=1, help="First sphere dimension of a Clifford product.")
    parser.add_argument("--q", type=int, default=1, help="Second sphere dimension of a Clifford product.")
    parser.add_argument("--r2", type=float, default=0.5, help="Squared radius r^2 of the first factor.")
    parser.add_argument("--n", type=int, default=2, help="Dimension of the umbilical sphere.")
    parser.add_argument("--rho", type=float, default=1.0, help="Euclidean radius of the umbilical sphere.")
    parser.add_argument("--file", type=Path, default=None, help="Immersion sample file.")
    parser.add_argument("--flip-normal", action="store_true", help="Use the opposite orientation.")
    parser.add_argument("--potential", choices=("consistent", "lumped"), default=POTENTIAL_QUADRATURE,
                        help="Quadrature of the |A|^2 + n potential.")


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--timing", action="store_true", help="Report wall-clock time (breaks byte-identity).")


def _add_method(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--exact", dest="method", action="store_const", const="exact")
    group.add_argument("--discrete", dest="method", action="store_const", const="discrete")
    parser.set_defaults(method=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="index_jump",
        description="Weak stability index of CMC hypersurfaces in spheres.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="INFO logging on stderr.")
    sub = parser.add_subparsers(dest="command", required=True)

    index = sub.add_parser("index", help="Weak and strong index intervals.")
    index.add_argument("family", choices=FAMILIES)
    _add_family_options(index)
    _add_method(index)
    index.add_argument("--grid", type=int, default=DEFAULT_GRID)
    index.add_argument("--tau", type=float, default=None, help="Zero tolerance (exact 0, discrete 1e-3).")
    index.add_argument("--window", type=float, default=DEFAULT_WINDOW)
    index.add_argument("--report", "--out", dest="report", type=Path, default=None, help="Write the report here.")
    _add_output_options(index)

    spectrum = sub.add_parser("spectrum", help="Exact or lowest discrete Jacobi eigenvalues.")
    spectrum.add_argument("family", choices=FAMILIES)
    _add_family_options(spectrum)
    _add_method(spectrum)
    spectrum.add_argument("--grid", type=int, default=DEFAULT_GRID)
    spectrum.add_argument("--window", type=float, default=DEFAULT_WINDOW)
    spectrum.add_argument("--count", type=int, default=DISCRETE_EIGEN_COUNT)
    spectrum.add_argument("--simons", action="store_true", help="Check Simons' bound (minimal surfaces only).")
    spectrum.add_argument("--report", "--out", dest="report", type=Path, default=None)
    _add_output_options(spectrum)

    verify = sub.add_parser("verify", help="Identity, lemma, expansion or theorem battery.")
    verify.add_argument("target", choices=VERIFY_TARGETS)
    verify.add_argument("--family", choices=FAMILIES, default="clifford")
    _add_family_options(verify)
    verify.add_argument("--grid", type=int, default=CONVERGENCE_GRID)
    verify.add_argument("--tol", type=float, default=None, help="Residual tolerance override.")
    verify.add_argument("--no-convergence", dest="convergence", action="store_false",
                        help="Skip the half-resolution run.")
    verify.add_argument("--tau-strict", type=float, default=TAU_STRICT_FACTOR, help="Strictness factor (x area).")
    verify.add_argument("--tau-adm", type=float, default=TAU_ADM_FACTOR, help="Admissibility factor (x sqrt(area)).")
    verify.add_argument("--slack", type=float, default=SLACK_FACTOR, help="Inequality slack factor (x area).")
    verify.add_argument("--umbilic-tol", type=float, default=UMBILIC_TOL)
    verify.add_argument("--report", "--out", dest="report", type=Path, default=None)
    _add_output_options(verify)

    sweep = sub.add_parser("sweep", help="Exact indices along the Clifford family.")
    sweep.add_argument("--p", type=int, default=1)
    sweep.add_argument("--q", type=int, default=1)
    sweep.add_argument("--r2-min", type=float, default=0.05)
    sweep.add_argument("--r2-max", type=float, default=0.95)
    sweep.add_argument("--steps", type=int, default=19)
    sweep.add_argument("--r2-values", type=str, default=None, help="Comma separated r^2 values.")
    sweep.add_argument("--tau", type=float, default=None)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--out", type=Path, default=None, help="CSV output path.")
    sweep.add_argument("--plot", type=Path, default=None, help="PNG output path.")
    sweep.add_argument("--report", type=Path, default=None)
    _add_output_options(sweep)

    validate = sub.add_parser("validate", help="Check a sampled immersion.")
    validate.add_argument("--family", choices=FAMILIES, default="file")
    _add_family_options(validate)
    validate.add_argument("--grid", type=int, default=DEFAULT_GRID)
    validate.add_argument("--tol", type=float, default=IMMERSION_TOL)
    validate.add_argument("--export", type=Path, default=None, help="Write the grid as a sample file.")
    validate.add_argument("--positions-only", action="store_true", help="Export positions without derivatives.")
    validate.add_argument("--report", "--out", dest="report", type=Path, default=None)
    _add_output_options(validate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    :param argv: Arguments without the program name.
    :return: Exit code.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    start = time.perf_counter()
    code = 0
    try:
        report = COMMANDS[args.command](args)
    except CheckFailed as failure:
        report = failure.report
        code = 1
    except DegenerateImmersionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except TheoremHypothesisError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (ImmersionFileError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    timing = (time.perf_counter() - start) * 1000.0 if args.timing else None
    report = report.model_copy(update={"command": " ".join(_echo(argv)), "timing_ms": timing})
    try:
        _emit(report, args)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    return code


def _echo(argv: List[str]) -> List[str]:
    return [a for a in argv if a not in ("-v", "--verbose", "--timing")]
