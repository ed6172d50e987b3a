from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from helmflow.network.model import BusKind


class BusRecord(BaseModel):
    """
    Bus record of a case document. ``v`` is read for swing buses, ``vsp`` for PV buses.
    """

    model_config = ConfigDict(extra="forbid")

    id: int = Field(description="Positive bus identifier.")
    type: BusKind = Field(description="swing, pq or pv.")
    v: Optional[Tuple[float, float]] = Field(
        default=None, description="Swing voltage as [re, im]."
    )
    p: float = Field(default=0.0, description="Active injection.")
    q: float = Field(default=0.0, description="Reactive injection (PQ).")
    vsp: Optional[float] = Field(default=None, description="Voltage setpoint (PV).")
    gsh: float = Field(default=0.0, description="Shunt conductance.")
    bsh: float = Field(default=0.0, description="Shunt susceptance.")

    @model_validator(mode="after")
    def _require_setpoint(self) -> "BusRecord":
        if self.type == BusKind.PV and self.vsp is None:
            raise ValueError("PV bus requires 'vsp'")
        return self


class BranchRecord(BaseModel):
    """
    Branch record of a case document; ``from``/``to`` are bus ids.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    from_bus: int = Field(alias="from", description="Bus id of the tapped side.")
    to_bus: int = Field(alias="to", description="Bus id of the other side.")
    r: float = Field(default=0.0, description="Series resistance.")
    x: float = Field(default=0.0, description="Series reactance.")
    b: float = Field(default=0.0, description="Total line charging.")
    tap: float = Field(default=1.0, description="Off-nominal turns ratio.")
    shift_deg: float = Field(default=0.0, description="Phase shift in degrees.")


class CaseDocument(BaseModel):
    """
    Top-level case document, all quantities per-unit on ``base_mva``.
    """

    model_config = ConfigDict(extra="forbid")

    base_mva: float = Field(default=100.0, gt=0, description="System base power.")
    buses: List[BusRecord] = Field(min_length=1)
    branches: List[BranchRecord] = Field(default_factory=list)
