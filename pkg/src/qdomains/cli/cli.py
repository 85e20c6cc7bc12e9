"""``qdomains`` command line.

Exit codes: 0 every check passed, 1 a check failed, 2 invalid input (JSON
diagnostic on stderr), 3 no convergence or loss of univalence, 4 singular
flux system.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from pydantic import ValidationError
from sympy import Poly, symbols, sympify

from ..algebra.field import rational
from ..algebra.poly2 import POLY2, X, Y
from ..config import get_settings
from ..domains.conformal_map import ConformalMap
from ..domains.moments import moments
from ..errors import NoConvergence, NonUnivalent, QDomainsError, SingularSystem
from ..fluxes.fluxes import fluxes_for_map, to_source_strengths
from ..growth.growth import evolve, path_independence_check
from ..intertwine.checks import check_intertwining, check_schrodinger_gauge
from ..intertwine.intertwine import build_bundle
from ..intertwine.media import DeformedMedium
from ..intertwine.search import search_deformed
from ..serialize import serialize_exact
from ..verify.ball import BallSpec, ball_identity_check, harmonic_basis, parse_polynomial
from ..verify.identity import START_NODES, kernel_check, verify_identity
from ..verify.pressure import pressure_disk, verify_pressure
from .scenario import Scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3
EXIT_SINGULAR = 4


class Output:
    """Writes artifacts to ``--out`` or, without it, JSON to stdout."""

    def __init__(self, out: Path | None):
        self.out = out
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)

    def json(self, name: str, config) -> None:
        text = json.dumps(config, indent=2, ensure_ascii=False) + "\n"
        if self.out is None:
            sys.stdout.write(text)
        else:
            (self.out / f"{name}.json").write_text(text, encoding="utf-8")

    def jsonl(self, name: str, configs: Sequence) -> None:
        text = "".join(json.dumps(c, ensure_ascii=False) + "\n" for c in configs)
        if self.out is None:
            sys.stdout.write(text)
        else:
            (self.out / f"{name}.jsonl").write_text(text, encoding="utf-8")

    def csv(self, name: str, frame) -> None:
        if self.out is None:
            logger.warning("CSV output %s needs --out; skipped", name)
            return
        frame.to_csv(self.out / f"{name}.csv", index=False, float_format="%.17g")


def _json_argument(text: str):
    """Inline JSON, or the path of a JSON file."""
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        return json.loads(stripped)
    with open(stripped, encoding="utf-8") as handle:
        return json.load(handle)


def _conformal_map(text: str) -> ConformalMap:
    return ConformalMap.model_validate(_json_argument(text))


def parse_xy_polynomial(text: str):
    """Parse a real polynomial in ``x``, ``y`` such as ``"x**2*(5*y**2 - x**2)"``."""
    x, y = symbols("x y")
    try:
        poly = Poly(sympify(text, locals={"x": x, "y": y}), x, y)
    except Exception as err:  # sympy raises a zoo of parse errors
        raise ValueError(f"Cannot parse {text!r} as a polynomial in x, y.") from err
    result = POLY2.zero
    for (i, j), coeff in poly.terms():
        result += X**i * Y**j * POLY2.domain.convert(rational(coeff))
    return result


def _times(text: str) -> list:
    return [rational(part.strip()) for part in text.split(",") if part.strip()]


# Commands -------------------------------------------------------------------


def cmd_intertwiner(args, output: Output) -> int:
    bundle = build_bundle(args.medium, normalize=not args.raw)
    output.json("intertwiner", bundle.to_config())
    return EXIT_OK


def cmd_check_intertwining(args, output: Output) -> int:
    bundle = build_bundle(args.medium)
    reports = [check_intertwining(bundle, args.degree)]
    if not isinstance(bundle.medium, DeformedMedium):
        reports.append(check_schrodinger_gauge(bundle, args.degree))
    output.json("check-intertwining", [r.to_config() for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_search_deformed(args, output: Output) -> int:
    target = parse_xy_polynomial(args.target) if args.target else None
    result = search_deformed(args.max_n, args.max_k, args.phase_grid, target)
    output.json("search-deformed", result.to_config())
    if result.exhausted:
        logger.warning("No configuration matched the target in %d candidates", result.examined)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_moments(args, output: Output) -> int:
    conformal_map = _conformal_map(args.map)
    output.json("moments", moments(conformal_map, args.pmax).to_config())
    return EXIT_OK


def cmd_fluxes(args, output: Output) -> int:
    solution = fluxes_for_map(build_bundle(args.medium), _conformal_map(args.map))
    fluxes = solution.fluxes
    payload = fluxes.to_config()
    # q_j = (−1)^j Q_j, the source-strength convention of the growth equations
    payload["source_strengths"] = [
        serialize_exact(q) for q in to_source_strengths([fluxes.Q, *fluxes.Qj])
    ]
    payload["residuals"] = [eq.to_config() for eq in solution.residuals if not eq.dropped]
    payload["dropped_residuals"] = [eq.to_config() for eq in solution.residuals if eq.dropped]
    payload["passed"] = solution.passed
    output.json("fluxes", payload)
    return EXIT_OK if solution.passed else EXIT_CHECK_FAILED


def cmd_verify_identity(args, output: Output) -> int:
    conformal_map = _conformal_map(args.map)
    bundle = build_bundle(args.medium)
    solution = fluxes_for_map(bundle, conformal_map)
    identity = verify_identity(
        conformal_map, bundle, solution, args.basis_size, start=args.resolution
    )
    kernel = kernel_check(
        conformal_map, bundle, solution, args.basis_size, seed=args.seed, start=args.resolution
    )
    output.json("verify-identity", {"identity": identity.to_config(), "kernel": kernel.to_config()})
    return EXIT_OK if identity.passed and kernel.passed else EXIT_CHECK_FAILED


def cmd_pressure_check(args, output: Output) -> int:
    z1 = _json_argument(args.z1) if args.z1.lstrip().startswith("[") else args.z1
    expr = pressure_disk(args.r, args.rdot, z1)
    report = verify_pressure(expr)
    output.json("pressure-check", {"pressure": expr.to_config(), "report": report.to_config()})
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_ball_check(args, output: Output) -> int:
    spec = BallSpec(d=args.d, r=args.r, center=args.center.split(","))
    polys = (
        [parse_polynomial(h, spec.d) for h in args.h]
        if args.h
        else harmonic_basis(spec.d, args.max_degree)
    )
    reports = [ball_identity_check(spec, h) for h in polys]
    output.json("ball-check", {"ball": spec.to_config(), "reports": [r.to_config() for r in reports]})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def _write_frames(frames, scenario: Scenario, output: Output) -> None:
    output.jsonl("frames", [frame.to_config() for frame in frames])
    samples = scenario.outputs.boundary_samples
    if samples and "csv" in scenario.outputs.formats:
        for i, frame in enumerate(frames):
            output.csv(f"boundary_{i:04d}", frame.conformal_map.boundary_frame(samples))


def cmd_grow(args, output: Output) -> int:
    scenario = Scenario.load(args.scenario)
    if args.times:
        scenario.outputs.times = _times(args.times)
    if args.emit_boundary is not None:
        scenario.outputs.boundary_samples = args.emit_boundary
        if args.emit_boundary and "csv" not in scenario.outputs.formats:
            scenario.outputs.formats = [*scenario.outputs.formats, "csv"]
    try:
        frames = evolve(scenario.source_schedule(), scenario.medium, scenario.outputs.times)
    except NonUnivalent as err:
        _write_frames(err.frames, scenario, output)
        output.json(
            "breakdown",
            {"breakdown_time": list(err.breakdown_time or ()), "reason": str(err)},
        )
        raise
    _write_frames(frames, scenario, output)
    return EXIT_OK


def cmd_path_check(args, output: Output) -> int:
    first = Scenario.load(args.scenario)
    second = Scenario.load(args.against)
    report = path_independence_check(
        first.source_schedule(), second.source_schedule(), first.medium, rational(args.t_final)
    )
    output.json("path-check", report.to_config())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# Parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdomains",
        description="Intertwiners, multipole fluxes and quadrature identities "
        "for growth in algebraic media.",
    )
    parser.add_argument("--out", type=Path, default=None, help="Directory for artifacts (default: stdout).")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="-v for INFO, -vv for DEBUG.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable, summary: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=summary)
        p.set_defaults(handler=handler)
        return p

    p = command("intertwiner", cmd_intertwiner, "Build T, ζ and L for a medium.")
    p.add_argument("--medium", required=True, help="axis:n, dihedral:s,n,l or deformed:k1,..:p1,..")
    p.add_argument("--raw", action="store_true", help="Skip normalization.")

    p = command("check-intertwining", cmd_check_intertwining, "Exact intertwining and gauge checks.")
    p.add_argument("--medium", required=True, help="axis:n, dihedral:s,n,l or deformed:k1,..:p1,..")
    p.add_argument("--degree", type=int, default=8)

    p = command("search-deformed", cmd_search_deformed, "Search Wronskian-ratio media.")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-k", type=int, default=6)
    p.add_argument("--phase-grid", choices=["mod2", "full"], default="mod2")
    p.add_argument("--target", default=None, help="ζ to look for, as a polynomial in x, y.")

    p = command("moments", cmd_moments, "Exact moments of a polynomial map.")
    p.add_argument("--map", required=True, help="Map as inline JSON or a JSON file path.")
    p.add_argument("--pmax", type=int, default=4)

    p = command("fluxes", cmd_fluxes, "Solve the multipole flux system.")
    p.add_argument("--medium", required=True, help="axis:n, dihedral:s,n,l or deformed:k1,..:p1,..")
    p.add_argument("--map", required=True)

    p = command("verify-identity", cmd_verify_identity, "Numeric quadrature-identity check.")
    p.add_argument("--medium", required=True, help="axis:n, dihedral:s,n,l or deformed:k1,..:p1,..")
    p.add_argument("--map", required=True)
    p.add_argument("--basis-size", type=int, default=4)
    p.add_argument("--resolution", type=int, default=START_NODES, help="Initial radial nodes.")
    p.add_argument("--seed", type=int, default=0)

    p = command("pressure-check", cmd_pressure_check, "Verify the disk pressure field.")
    p.add_argument("--r", required=True)
    p.add_argument("--rdot", required=True)
    p.add_argument("--z1", required=True, help="Real source abscissa or a [re, im] pair.")

    p = command("ball-check", cmd_ball_check, "Verify the d-ball identity.")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--r", default="1")
    p.add_argument("--center", required=True, help="Comma-separated coordinates.")
    p.add_argument("--h", action="append", default=None, help="Harmonic polynomial; repeatable.")
    p.add_argument("--max-degree", type=int, default=4, help="Basis degree when no --h is given.")

    p = command("grow", cmd_grow, "Evolve a scenario and emit frames.")
    p.add_argument("--scenario", required=True)
    p.add_argument("--times", default=None, help="Comma-separated output times.")
    p.add_argument("--emit-boundary", type=int, default=None, help="Boundary points per CSV polyline.")

    p = command("path-check", cmd_path_check, "Compare two schedules at a final time.")
    p.add_argument("--scenario", required=True)
    p.add_argument("--against", required=True)
    p.add_argument("--t-final", required=True)
    return parser


def _configure_logging(verbose: int) -> None:
    level = get_settings().log_level
    if verbose:
        level = "DEBUG" if verbose > 1 else "INFO"
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def _diagnostic(kind: str, err: Exception) -> None:
    payload = {"error": kind, "message": str(err)}
    if isinstance(err, ValidationError):
        payload["details"] = json.loads(err.json())
    sys.stderr.write(json.dumps(payload, ensure_ascii=False) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, dispatch the command and map failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        _configure_logging(args.verbose)
        return args.handler(args, Output(args.out))
    except (ValidationError, ValueError) as err:
        _diagnostic("validation", err)
        return EXIT_INVALID
    except (NoConvergence, NonUnivalent) as err:
        _diagnostic(type(err).__name__, err)
        return EXIT_NO_CONVERGENCE
    except SingularSystem as err:
        _diagnostic("SingularSystem", err)
        return EXIT_SINGULAR
    except QDomainsError as err:
        _diagnostic(type(err).__name__, err)
        return EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run())


__all__ = ["build_parser", "main", "parse_xy_polynomial", "run"]
