from enum import StrEnum
from typing import List, Literal, Optional, Tuple

import numpy as np
from numpy import ndarray
from pydantic import BaseModel, ConfigDict, Field

from helmflow.network.model import BusKind
from helmflow.pade.result import PadeStatus
from helmflow.settings.solver import EmbeddingKind

Pair = Tuple[float, float]


class SolveStatus(StrEnum):
    """
    Outcome of a HELM solve.

    Attributes:
        CONVERGED (str): Every series converged at s = 1 and the mismatch gate passed.
        NO_SOLUTION (str): A singularity was located on the real interval (0, 1].
        ORDER_BUDGET_EXHAUSTED (str): Undecided at the maximum order.
    """

    CONVERGED = "converged"
    NO_SOLUTION = "no_solution"
    ORDER_BUDGET_EXHAUSTED = "order_budget_exhausted"


class BusVoltage(BaseModel):
    """
    Solved state of one bus.

    Attributes:
        id (int): Bus identifier.
        kind (BusKind): Bus type.
        v (Pair): Rectangular voltage (re, im).
        v_polar (Pair): Polar voltage (magnitude, angle in degrees).
        q (Optional[float]): Reactive injection, PV buses only.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    id: int
    kind: BusKind
    v: Pair
    v_polar: Pair
    q: Optional[float] = None

    @property
    def voltage(self) -> complex:
        return complex(*self.v)


class BusDiagnostics(BaseModel):
    """
    Padé diagnostics of one continued series.

    Attributes:
        bus_id (int): Bus the series belongs to.
        quantity (str): "v" for a voltage series, "q" for a PV reactive series.
        status (PadeStatus): Stopping-rule outcome.
        converged_at (Optional[int]): Diagonal index where the rule fired.
        last_step (Optional[float]): |last - previous| diagonal value.
        breakdowns (int): Epsilon-table breakdowns.
        convergence_radius (Optional[float]): Root-test radius, None when unbounded.
        values (List[Pair]): Diagonal Padé values (re, im) at s = 1.
        pole_estimates (List[Pair]): Denominator roots (re, im), nearest first.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    bus_id: int
    quantity: Literal["v", "q"]
    status: PadeStatus
    converged_at: Optional[int] = None
    last_step: Optional[float] = None
    breakdowns: int = 0
    convergence_radius: Optional[float] = None
    values: List[Pair] = Field(default_factory=list)
    pole_estimates: List[Pair] = Field(default_factory=list)


class SolveReport(BaseModel):
    """
    Result of a HELM solve, serialized by :mod:`helmflow.caseio`.

    Attributes:
        status (SolveStatus): Classification of the solve.
        embedding (EmbeddingKind): Embedding used.
        order_used (int): Highest series order computed.
        mismatch_norm (Optional[float]): Infinity norm of the current mismatch at the reported voltages.
        setpoint_deviation (Optional[float]): Largest ||V_k| - vsp| over PV buses.
        mismatch_tol (float): Tolerance of the mismatch gate.
        buses (List[BusVoltage]): Per-bus state in case order.
        diagnostics (List[BusDiagnostics]): Per-series Padé diagnostics.
        collapse_estimate (Optional[float]): Smallest positive real pole over all series.
        note (Optional[str]): Explanation of a non-converged classification.
    """

    model_config = ConfigDict(extra="forbid")

    status: SolveStatus
    embedding: EmbeddingKind
    order_used: int
    mismatch_norm: Optional[float] = None
    setpoint_deviation: Optional[float] = None
    mismatch_tol: float
    buses: List[BusVoltage]
    diagnostics: List[BusDiagnostics] = Field(default_factory=list)
    collapse_estimate: Optional[float] = None
    note: Optional[str] = None

    @property
    def converged(self) -> bool:
        return self.status == SolveStatus.CONVERGED

    @property
    def v(self) -> ndarray:
        return np.array([bus.voltage for bus in self.buses], dtype=complex)

    @property
    def q_pv(self) -> ndarray:
        return np.array(
            [bus.q for bus in self.buses if bus.kind == BusKind.PV], dtype=float
        )

    def voltage(self, bus_id: int) -> complex:
        return next(bus.voltage for bus in self.buses if bus.id == bus_id)


class ScanPoint(BaseModel):
    """
    Padé evaluation of every series at one s.

    ``v`` holds rectangular voltages per bus when every series converged.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    s: float
    status: PadeStatus
    v: Optional[List[Pair]] = None
    q_pv: Optional[List[float]] = None

    @property
    def converged(self) -> bool:
        return self.status == PadeStatus.CONVERGED


class ScanResult(BaseModel):
    """
    Collapse-proximity profile along the real s axis.

    Attributes:
        bus_ids (List[int]): Column order of the per-point voltages.
        order_used (int): Series order evaluated at every point.
        points (List[ScanPoint]): One entry per requested s.
        max_converged_s (Optional[float]): Largest s of the converged prefix of the grid.
    """

    model_config = ConfigDict(extra="forbid")

    bus_ids: List[int]
    order_used: int
    points: List[ScanPoint]
    max_converged_s: Optional[float] = None
