from helmflow.caseio import load_case, parse_case, parse_report, write_report
from helmflow.exceptions import HelmFlowError
from helmflow.logging import configure_logging
from helmflow.network import BranchSpec, BusKind, BusSpec, Network, build_admittance
from helmflow.report import ScanResult, SolveReport, SolveStatus
from helmflow.settings import EmbeddingKind, Settings, SolveOptions
from helmflow.solver import HelmSolver, scan, solve, solve_pv


__all__ = [
    "BranchSpec",
    "BusKind",
    "BusSpec",
    "EmbeddingKind",
    "HelmFlowError",
    "HelmSolver",
    "Network",
    "ScanResult",
    "Settings",
    "SolveOptions",
    "SolveReport",
    "SolveStatus",
    "build_admittance",
    "configure_logging",
    "load_case",
    "parse_case",
    "parse_report",
    "scan",
    "solve",
    "solve_pv",
    "write_report",
]
