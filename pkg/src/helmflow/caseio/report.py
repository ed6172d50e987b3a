from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError

from helmflow.exceptions import ReportFormatError
from helmflow.network.model import Network
from helmflow.report import BusDiagnostics, ScanResult, SolveReport
from helmflow.series.germ import GermSeries
from helmflow.settings.solver import EmbeddingKind

Pair = Tuple[float, float]


class BusSeries(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int
    v: List[Pair]
    w: List[Pair]
    q: List[float] = []


class SeriesDump(BaseModel):
    """
    Power-series coefficients of every bus, lowest order first.
    """

    model_config = ConfigDict(extra="forbid")

    embedding: EmbeddingKind
    order: int
    buses: List[BusSeries]


class PadeDump(BaseModel):
    model_config = ConfigDict(extra="forbid")

    status: str
    order_used: int
    collapse_estimate: float | None = None
    diagnostics: List[BusDiagnostics]


def _pairs(values) -> List[Pair]:
    return [(float(x.real), float(x.imag)) for x in values]


def write_report(report: SolveReport) -> str:
    """
    Serializes a solve report as deterministic JSON.

    Keys follow the model field order and reals use the shortest repr that
    round-trips, so :func:`parse_report` restores every number bit for bit.
    """
    return report.model_dump_json(indent=2)


def parse_report(text: str | bytes) -> SolveReport:
    """
    Raises:
        ReportFormatError: If the document is not a valid report.
    """
    try:
        return SolveReport.model_validate_json(text)
    except ValidationError as e:
        raise ReportFormatError(str(e.errors()[0].get("msg", e))) from e


def write_scan(result: ScanResult) -> str:
    return result.model_dump_json(indent=2)


def write_series_dump(germ: GermSeries, network: Network) -> str:
    """
    JSON dump of V, W and (for PV buses) Q coefficients per bus.
    """
    pv_position = {k: p for p, k in enumerate(germ.pv_indices)}
    buses = [
        BusSeries(
            id=bus.id,
            v=_pairs(germ.v[:, i]),
            w=_pairs(germ.w[:, i]),
            q=[float(x) for x in germ.q[:, pv_position[i]]] if i in pv_position else [],
        )
        for i, bus in enumerate(network.buses)
    ]
    dump = SeriesDump(embedding=germ.embedding, order=germ.order, buses=buses)
    return dump.model_dump_json(indent=2)


def write_pade_dump(report: SolveReport) -> str:
    """
    JSON dump of the diagonal value sequences and pole estimates per series.
    """
    dump = PadeDump(
        status=report.status.value,
        order_used=report.order_used,
        collapse_estimate=report.collapse_estimate,
        diagnostics=report.diagnostics,
    )
    return dump.model_dump_json(indent=2)
