"""
Command-line front end.

    helmflow solve case.json [--embedding canonical] [--max-order 60] ...
    helmflow scan case.json --from 0.05 --to 1.0 --steps 20
    helmflow twobus --sigma-r 0.5 --sigma-i 0.4 [--s 1.0]
    helmflow twobus-pv --x 0.2 --p 1.0 --vsp 1.0 [--s 1.0]
    helmflow validate case.json

Output is JSON unless ``--pretty`` is given. Exit codes: 0 converged or
success, 2 no solution, 3 order budget exhausted, 1 input or usage error.
The environment is never consulted.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ValidationError

from helmflow.caseio import (
    load_case,
    write_pade_dump,
    write_report,
    write_scan,
    write_series_dump,
)
from helmflow.exceptions import HelmFlowError
from helmflow.logging import configure_logging
from helmflow.oracle import (
    Branch,
    NonConvergence,
    NoSolution,
    TwoBusCase,
    newton_raphson,
    twobus_branch_points,
    twobus_closed_form,
    twobus_discriminant,
    twobus_is_feasible,
    twobus_pv_closed_form,
)
from helmflow.report import ScanResult, SolveReport, SolveStatus
from helmflow.settings import (
    EmbeddingKind,
    LoggingSettings,
    LogLevel,
    OracleSettings,
    PadeSettings,
    Settings,
    SolveOptions,
)
from helmflow.solver import HelmSolver
from helmflow.utilities.io.report_writer import write_text

Pair = Tuple[float, float]

EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 1
EXIT_NO_SOLUTION = 2
EXIT_BUDGET_EXHAUSTED = 3

STATUS_EXIT_CODES = {
    SolveStatus.CONVERGED: EXIT_SUCCESS,
    SolveStatus.NO_SOLUTION: EXIT_NO_SOLUTION,
    SolveStatus.ORDER_BUDGET_EXHAUSTED: EXIT_BUDGET_EXHAUSTED,
}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


class TwoBusReport(BaseModel):
    sigma: Pair
    s: float
    discriminant: float
    plus: Optional[Pair]
    minus: Optional[Pair]
    s_minus: Optional[float]
    s_plus: Optional[float]
    feasible: bool


class TwoBusPVReport(BaseModel):
    x: float
    p: float
    vsp: float
    s: float
    u: Optional[Pair]
    q: Optional[float]
    u_minus: Optional[Pair]
    q_minus: Optional[float]


class BusComparison(BaseModel):
    id: int
    helm: Pair
    newton: Optional[Pair]
    deviation: Optional[float]


class ValidationReport(BaseModel):
    helm_status: SolveStatus
    newton_status: str
    newton_iterations: int
    buses: List[BusComparison]
    max_deviation: Optional[float]


def _finite(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None


def _pair(value: complex) -> Pair:
    return float(np.real(value)), float(np.imag(value))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_solve_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--embedding",
        choices=[kind.value for kind in EmbeddingKind],
        default=EmbeddingKind.CANONICAL.value,
    )
    parser.add_argument("--max-order", type=int, default=None)
    parser.add_argument("--order-step", type=int, default=None)
    parser.add_argument("--pade-tol", type=float, default=None)
    parser.add_argument("--mismatch-tol", type=float, default=None)


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = _ArgumentParser(
        prog="helmflow",
        description="Holomorphic embedding power flow with Padé continuation.",
    )
    parser.add_argument(
        "--log-level",
        choices=[level.value for level in LogLevel],
        default=LogLevel.WARNING.value,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="Solve a case at s = 1.")
    solve.add_argument("case", type=Path)
    _add_solve_options(solve)
    solve.add_argument("--dump-series", type=Path, default=None)
    solve.add_argument("--dump-pade", type=Path, default=None)
    solve.add_argument("--output", type=Path, default=None)
    solve.add_argument("--pretty", action="store_true")

    scan = subparsers.add_parser("scan", help="Evaluate the germ along the s axis.")
    scan.add_argument("case", type=Path)
    scan.add_argument("--from", dest="s_from", type=float, required=True)
    scan.add_argument("--to", dest="s_to", type=float, required=True)
    scan.add_argument("--steps", type=_positive_int, required=True)
    _add_solve_options(scan)
    scan.add_argument("--output", type=Path, default=None)
    scan.add_argument("--pretty", action="store_true")

    twobus = subparsers.add_parser("twobus", help="Two-bus closed form and branch points.")
    twobus.add_argument("--sigma-r", type=float, required=True)
    twobus.add_argument("--sigma-i", type=float, required=True)
    twobus.add_argument("--s", type=float, default=1.0)
    twobus.add_argument("--pretty", action="store_true")

    twobus_pv = subparsers.add_parser("twobus-pv", help="Lossless PV two-bus closed form.")
    twobus_pv.add_argument("--x", type=float, required=True)
    twobus_pv.add_argument("--p", type=float, required=True)
    twobus_pv.add_argument("--vsp", type=float, required=True)
    twobus_pv.add_argument("--s", type=float, default=1.0)
    twobus_pv.add_argument("--pretty", action="store_true")

    validate = subparsers.add_parser("validate", help="Compare HELM with Newton-Raphson.")
    validate.add_argument("case", type=Path)
    _add_solve_options(validate)
    validate.add_argument("--pretty", action="store_true")

    return parser.parse_args(argv)


def _settings(args: argparse.Namespace) -> Settings:
    """
    Library settings built from defaults and flags only.
    """
    overrides = {
        "max_order": getattr(args, "max_order", None),
        "order_step": getattr(args, "order_step", None),
        "pade_tol": getattr(args, "pade_tol", None),
        "mismatch_tol": getattr(args, "mismatch_tol", None),
    }
    solver = SolveOptions(
        embedding=getattr(args, "embedding", EmbeddingKind.CANONICAL),
        **{key: value for key, value in overrides.items() if value is not None},
    )
    return Settings.model_construct(
        solver=solver,
        pade=PadeSettings(),
        oracle=OracleSettings(),
        logging=LoggingSettings(log_level=args.log_level),
    )


def _emit(text: str, output: Optional[Path] = None) -> None:
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        write_text(output, text + "\n")


def _pretty_report(report: SolveReport) -> str:
    lines = [
        f"status: {report.status.value}",
        f"order used: {report.order_used}",
        f"mismatch: {report.mismatch_norm}",
    ]
    if report.collapse_estimate is not None:
        lines.append(f"collapse estimate: s = {report.collapse_estimate:.6f}")
    if report.note:
        lines.append(f"note: {report.note}")
    lines.append(f"{'bus':>6} {'kind':>6} {'|V|':>12} {'angle':>12} {'q':>12}")
    for bus in report.buses:
        q = "" if bus.q is None else f"{bus.q:12.6f}"
        lines.append(
            f"{bus.id:>6} {bus.kind.value:>6} "
            f"{bus.v_polar[0]:12.6f} {bus.v_polar[1]:12.6f} {q}"
        )
    return "\n".join(lines)


def _pretty_scan(result: ScanResult) -> str:
    lines = [f"max converged s: {result.max_converged_s}"]
    for point in result.points:
        if point.v is None:
            lines.append(f"{point.s:8.4f}  not converged")
            continue
        magnitudes = " ".join(f"{abs(complex(*v)):10.6f}" for v in point.v)
        lines.append(f"{point.s:8.4f}  {magnitudes}")
    return "\n".join(lines)


def _command_solve(args: argparse.Namespace, settings: Settings) -> int:
    network = load_case(args.case)
    solver = HelmSolver(settings)
    report = solver.solve(network, settings.solver)

    if args.dump_series is not None:
        germ = solver.series(network, settings.solver, report.order_used)
        write_text(args.dump_series, write_series_dump(germ, network) + "\n")
    if args.dump_pade is not None:
        write_text(args.dump_pade, write_pade_dump(report) + "\n")

    _emit(_pretty_report(report) if args.pretty else write_report(report), args.output)
    return STATUS_EXIT_CODES[report.status]


def _command_scan(args: argparse.Namespace, settings: Settings) -> int:
    network = load_case(args.case)
    grid = np.linspace(args.s_from, args.s_to, args.steps)
    result = HelmSolver(settings).scan(network, grid.tolist(), settings.solver)
    _emit(_pretty_scan(result) if args.pretty else write_scan(result), args.output)
    return EXIT_SUCCESS


def _command_twobus(args: argparse.Namespace) -> int:
    case = TwoBusCase(complex(args.sigma_r, args.sigma_i))
    plus = twobus_closed_form(case, args.s, Branch.PLUS)
    minus = twobus_closed_form(case, args.s, Branch.MINUS)
    s_minus, s_plus = twobus_branch_points(case)
    report = TwoBusReport(
        sigma=(args.sigma_r, args.sigma_i),
        s=args.s,
        discriminant=twobus_discriminant(case, args.s),
        plus=None if isinstance(plus, NoSolution) else _pair(plus),
        minus=None if isinstance(minus, NoSolution) else _pair(minus),
        s_minus=_finite(s_minus),
        s_plus=_finite(s_plus),
        feasible=twobus_is_feasible(case, args.s),
    )
    if args.pretty:
        lines = [
            f"s_minus = {s_minus:.6f}",
            f"s_plus = {s_plus:.6f}",
            f"discriminant = {report.discriminant:.6f}",
            f"U+ = {report.plus}",
            f"U- = {report.minus}",
        ]
        _emit("\n".join(lines))
    else:
        _emit(report.model_dump_json(indent=2))
    return EXIT_NO_SOLUTION if isinstance(plus, NoSolution) else EXIT_SUCCESS


def _command_twobus_pv(args: argparse.Namespace) -> int:
    plus = twobus_pv_closed_form(args.x, args.p, args.vsp, args.s, Branch.PLUS)
    minus = twobus_pv_closed_form(args.x, args.p, args.vsp, args.s, Branch.MINUS)
    feasible = not isinstance(plus, NoSolution)
    report = TwoBusPVReport(
        x=args.x,
        p=args.p,
        vsp=args.vsp,
        s=args.s,
        u=_pair(plus[0]) if feasible else None,
        q=plus[1] if feasible else None,
        u_minus=_pair(minus[0]) if feasible else None,
        q_minus=minus[1] if feasible else None,
    )
    if args.pretty:
        _emit(f"U = {report.u}\nQ = {report.q}")
    else:
        _emit(report.model_dump_json(indent=2))
    return EXIT_SUCCESS if feasible else EXIT_NO_SOLUTION


def _command_validate(args: argparse.Namespace, settings: Settings) -> int:
    network = load_case(args.case)
    report = HelmSolver(settings).solve(network, settings.solver)
    newton = newton_raphson(network, settings=settings.oracle)

    failed = isinstance(newton, NonConvergence)
    buses = []
    for i, bus in enumerate(report.buses):
        newton_v = None if failed else newton.v[i]
        buses.append(
            BusComparison(
                id=bus.id,
                helm=bus.v,
                newton=None if failed else _pair(newton_v),
                deviation=None if failed else float(abs(bus.voltage - newton_v)),
            )
        )
    deviations = [bus.deviation for bus in buses if bus.deviation is not None]
    comparison = ValidationReport(
        helm_status=report.status,
        newton_status="non_convergence" if failed else "converged",
        newton_iterations=newton.iterations,
        buses=buses,
        max_deviation=max(deviations) if deviations else None,
    )
    if args.pretty:
        lines = [
            f"helm: {comparison.helm_status.value}",
            f"newton: {comparison.newton_status} ({comparison.newton_iterations} it)",
            f"max deviation: {comparison.max_deviation}",
        ]
        _emit("\n".join(lines))
    else:
        _emit(comparison.model_dump_json(indent=2))
    return STATUS_EXIT_CODES[report.status]


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs one command and returns its exit code.
    """
    try:
        args = _parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"helmflow: usage error: {e}\n")
        return EXIT_INPUT_ERROR

    try:
        settings = _settings(args)
        configure_logging(settings.logging)

        if args.command == "solve":
            return _command_solve(args, settings)
        if args.command == "scan":
            return _command_scan(args, settings)
        if args.command == "twobus":
            return _command_twobus(args)
        if args.command == "twobus-pv":
            return _command_twobus_pv(args)
        return _command_validate(args, settings)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ()))
        sys.stderr.write(f"helmflow: error: invalid option {location}: {first['msg']}\n")
        return EXIT_INPUT_ERROR
    except HelmFlowError as e:
        sys.stderr.write(f"helmflow: error: {e}\n")
        return EXIT_INPUT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
