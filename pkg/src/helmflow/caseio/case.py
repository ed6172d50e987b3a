from logging import getLogger
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from helmflow.caseio.schema import CaseDocument
from helmflow.exceptions import CaseFormatError
from helmflow.network.model import BranchSpec, BusKind, BusSpec, Network
from helmflow.utilities.io.case_loader import read_case_file

logger = getLogger(__name__)


def _format_error(error: ValidationError) -> CaseFormatError:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    return CaseFormatError(first.get("msg", str(error)), location or None)


def parse_case(text: Union[bytes, str]) -> Network:
    """
    Parses a JSON case document into a validated network.

    Omitted fields take their defaults: tap 1, shift 0, zero shunts, q 0 and
    a swing voltage of 1.

    Args:
        text (Union[bytes, str]): UTF-8 JSON document.
    Returns:
        Network: The validated network.
    Raises:
        CaseFormatError: On malformed JSON or a schema violation.
        DuplicateBusError: If two buses share an id.
        SwingBusError: Unless exactly one bus is a swing bus.
        UnknownBusError: If a branch references a missing bus.
        ZeroImpedanceError: If a branch has r = x = 0.
    """
    try:
        document = CaseDocument.model_validate_json(text)
    except ValidationError as e:
        raise _format_error(e) from e

    buses = [
        BusSpec(
            id=record.id,
            kind=record.type,
            p=record.p,
            q=record.q if record.type == BusKind.PQ else 0.0,
            vsp=record.vsp if record.vsp is not None else 1.0,
            vswing=complex(*record.v) if record.v is not None else 1.0 + 0.0j,
            gsh=record.gsh,
            bsh=record.bsh,
        )
        for record in document.buses
    ]
    branches = [
        BranchSpec(
            from_bus=record.from_bus,
            to_bus=record.to_bus,
            r=record.r,
            x=record.x,
            b=record.b,
            tap=record.tap,
            shift=record.shift_deg,
        )
        for record in document.branches
    ]

    network = Network(buses, branches)
    logger.debug("Parsed case with %d buses", network.n)
    return network


def load_case(file_path: Union[str, Path]) -> Network:
    """
    Reads and parses a case file.

    Raises:
        CaseLoadError: If the file cannot be read.
        CaseFormatError: As :func:`parse_case`.
    """
    return parse_case(read_case_file(Path(file_path)))
