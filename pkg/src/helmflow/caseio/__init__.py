from helmflow.caseio.case import load_case, parse_case
from helmflow.caseio.report import (
    parse_report,
    write_pade_dump,
    write_report,
    write_scan,
    write_series_dump,
)
from helmflow.caseio.schema import BranchRecord, BusRecord, CaseDocument


__all__ = [
    "BranchRecord",
    "BusRecord",
    "CaseDocument",
    "load_case",
    "parse_case",
    "parse_report",
    "write_pade_dump",
    "write_report",
    "write_scan",
    "write_series_dump",
]
