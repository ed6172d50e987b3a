from enum import StrEnum
from logging import getLogger
from typing import Dict, Iterable, List, Tuple

import numpy as np
from numpy import ndarray
from pydantic import BaseModel, ConfigDict, Field
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from helmflow.exceptions import (
    DisconnectedBusError,
    DuplicateBusError,
    InvalidBranchError,
    InvalidBusError,
    SwingBusError,
    UnknownBusError,
    ZeroImpedanceError,
)

logger = getLogger(__name__)


class BusKind(StrEnum):
    """
    Bus types of the power-flow problem.

    Attributes:
        SWING (str): Reference bus with a fixed complex voltage.
        PQ (str): Bus with fixed active and reactive injection.
        PV (str): Bus with fixed active injection and voltage magnitude.
    """

    SWING = "swing"
    PQ = "pq"
    PV = "pv"


class BusSpec(BaseModel):
    """
    A single bus, all quantities per-unit. Positive injections flow into the bus.

    Attributes:
        id (int): Positive bus identifier, unique within a network.
        kind (BusKind): Swing, PQ or PV.
        p (float): Active injection (PQ and PV).
        q (float): Reactive injection (PQ only).
        vsp (float): Voltage magnitude setpoint (PV only).
        vswing (complex): Fixed complex voltage (swing only).
        gsh (float): Shunt conductance to ground.
        bsh (float): Shunt susceptance to ground.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    id: int = Field(description="Positive bus identifier.")
    kind: BusKind = Field(description="Swing, PQ or PV.")
    p: float = Field(default=0.0, description="Active injection into the bus.")
    q: float = Field(default=0.0, description="Reactive injection into the bus (PQ).")
    vsp: float = Field(default=1.0, description="Voltage magnitude setpoint (PV).")
    vswing: complex = Field(default=1.0 + 0.0j, description="Swing voltage.")
    gsh: float = Field(default=0.0, description="Shunt conductance.")
    bsh: float = Field(default=0.0, description="Shunt susceptance.")

    @property
    def shunt(self) -> complex:
        return complex(self.gsh, self.bsh)


class BranchSpec(BaseModel):
    """
    A pi-model branch: series impedance, total charging, off-nominal tap on the
    ``from`` side and a phase shift in degrees.

    Attributes:
        from_bus (int): Bus id of the tapped side.
        to_bus (int): Bus id of the other side.
        r (float): Series resistance.
        x (float): Series reactance.
        b (float): Total line-charging susceptance.
        tap (float): Off-nominal turns ratio, 1.0 for a plain line.
        shift (float): Phase shift in degrees.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    from_bus: int = Field(description="Bus id of the tapped side.")
    to_bus: int = Field(description="Bus id of the other side.")
    r: float = Field(default=0.0, description="Series resistance.")
    x: float = Field(default=0.0, description="Series reactance.")
    b: float = Field(default=0.0, description="Total line-charging susceptance.")
    tap: float = Field(default=1.0, description="Off-nominal turns ratio.")
    shift: float = Field(default=0.0, description="Phase shift in degrees.")


class Network:
    """
    A validated power-flow instance: ordered buses, branches and index maps.

    Construction checks every structural invariant (one swing bus, unique ids,
    existing branch endpoints, non-zero impedances, positive taps and PV
    setpoints, connectivity from the swing bus) and raises the matching
    ``HelmFlowError`` subclass on the first violation. Instances are treated as
    immutable and may be shared across concurrent solves.
    """

    def __init__(self, buses: Iterable[BusSpec], branches: Iterable[BranchSpec]):
        self.buses: Tuple[BusSpec, ...] = tuple(buses)
        self.branches: Tuple[BranchSpec, ...] = tuple(branches)
        self.index: Dict[int, int] = {}

        for position, bus in enumerate(self.buses):
            if bus.id in self.index:
                raise DuplicateBusError(bus.id)
            if bus.id <= 0:
                raise InvalidBusError(bus.id, "bus ids must be positive")
            if bus.kind == BusKind.PV and not bus.vsp > 0:
                raise InvalidBusError(bus.id, f"PV setpoint must be positive, got {bus.vsp}")
            self.index[bus.id] = position

        swings = [i for i, bus in enumerate(self.buses) if bus.kind == BusKind.SWING]
        if len(swings) != 1:
            raise SwingBusError(len(swings))
        self.swing_index: int = swings[0]
        if self.buses[self.swing_index].vswing == 0:
            raise InvalidBusError(self.buses[self.swing_index].id, "swing voltage is zero")

        for branch_index, branch in enumerate(self.branches):
            for endpoint in (branch.from_bus, branch.to_bus):
                if endpoint not in self.index:
                    raise UnknownBusError(endpoint, branch_index)
            if branch.from_bus == branch.to_bus:
                raise InvalidBranchError(branch_index, "from and to buses are equal")
            if branch.r == 0 and branch.x == 0:
                raise ZeroImpedanceError(branch_index)
            if not branch.tap > 0:
                raise InvalidBranchError(branch_index, f"tap must be positive, got {branch.tap}")

        self._check_connectivity()

        logger.debug(
            "Built network with %d buses (%d PQ, %d PV) and %d branches",
            self.n,
            len(self.pq_indices),
            len(self.pv_indices),
            len(self.branches),
        )

    def _check_connectivity(self) -> None:
        """
        Raises:
            DisconnectedBusError: For the first bus (in bus order) unreachable from the swing.
        """
        if self.n == 1:
            return
        rows = [self.index[b.from_bus] for b in self.branches]
        cols = [self.index[b.to_bus] for b in self.branches]
        graph = coo_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(self.n, self.n)
        )
        _, labels = connected_components(graph, directed=False)
        swing_label = labels[self.swing_index]
        for position, label in enumerate(labels):
            if label != swing_label:
                raise DisconnectedBusError(self.buses[position].id)

    @property
    def n(self) -> int:
        return len(self.buses)

    @property
    def swing(self) -> BusSpec:
        return self.buses[self.swing_index]

    @property
    def vswing(self) -> complex:
        return complex(self.swing.vswing)

    @property
    def pq_indices(self) -> List[int]:
        return [i for i, bus in enumerate(self.buses) if bus.kind == BusKind.PQ]

    @property
    def pv_indices(self) -> List[int]:
        return [i for i, bus in enumerate(self.buses) if bus.kind == BusKind.PV]

    @property
    def non_swing_indices(self) -> List[int]:
        return [i for i in range(self.n) if i != self.swing_index]

    @property
    def has_pv(self) -> bool:
        return any(bus.kind == BusKind.PV for bus in self.buses)

    def injections(self, q_pv: ndarray = None) -> ndarray:
        """
        Complex power injections S_i = P_i + jQ_i, zero at the swing bus.

        Args:
            q_pv (ndarray): Reactive injections of the PV buses, in ``pv_indices`` order.
                Zero when omitted.
        Returns:
            ndarray: Length-n complex vector.
        """
        s = np.zeros(self.n, dtype=complex)
        for i, bus in enumerate(self.buses):
            if bus.kind == BusKind.PQ:
                s[i] = complex(bus.p, bus.q)
            elif bus.kind == BusKind.PV:
                s[i] = bus.p
        if q_pv is not None and len(self.pv_indices) > 0:
            s[self.pv_indices] += 1j * np.asarray(q_pv, dtype=float)
        return s

    def setpoints(self) -> ndarray:
        """Voltage magnitude setpoints of the PV buses, in ``pv_indices`` order."""
        return np.array([self.buses[i].vsp for i in self.pv_indices], dtype=float)

    def bus_ids(self) -> List[int]:
        return [bus.id for bus in self.buses]
