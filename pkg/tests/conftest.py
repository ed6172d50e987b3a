import json
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from helmflow.network import BranchSpec, BusKind, BusSpec, Network
from helmflow.oracle import twobus_network, twobus_pv_network
from helmflow.settings import SolveOptions


def random_network(seed: int, n: int) -> Network:
    """
    Connected, lightly loaded network: a random spanning tree plus a few chords,
    one swing bus, roughly a quarter of the remaining buses PV.
    """
    rng = np.random.default_rng(seed)
    buses = [BusSpec(id=1, kind=BusKind.SWING, vswing=complex(rng.uniform(1.0, 1.04)))]
    for bus_id in range(2, n + 1):
        if rng.random() < 0.25:
            buses.append(
                BusSpec(
                    id=bus_id,
                    kind=BusKind.PV,
                    p=float(rng.uniform(0.0, 0.1)),
                    vsp=float(rng.uniform(0.99, 1.03)),
                )
            )
        else:
            buses.append(
                BusSpec(
                    id=bus_id,
                    kind=BusKind.PQ,
                    p=float(-rng.uniform(0.0, 0.1)),
                    q=float(-rng.uniform(0.0, 0.04)),
                    bsh=float(rng.uniform(0.0, 0.02)),
                )
            )

    def line(a: int, b: int) -> BranchSpec:
        x = float(rng.uniform(0.05, 0.2))
        return BranchSpec(
            from_bus=a, to_bus=b, r=x / 5, x=x, b=float(rng.uniform(0.0, 0.03))
        )

    branches = [line(int(rng.integers(1, k)), k) for k in range(2, n + 1)]
    for _ in range(n // 3):
        a, b = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        branches.append(line(int(a), int(b)))
    return Network(buses, branches)


@pytest.fixture
def random_network_factory() -> Callable[[int, int], Network]:
    return random_network


@pytest.fixture
def mesh_network() -> Network:
    """Five buses with a PV bus, shunts, line charging, an off-nominal tap and a phase shifter."""
    return Network(
        [
            BusSpec(id=1, kind=BusKind.SWING, vswing=1.02 + 0.0j),
            BusSpec(id=2, kind=BusKind.PQ, p=-0.3, q=-0.1),
            BusSpec(id=3, kind=BusKind.PV, p=0.2, vsp=1.01),
            BusSpec(id=4, kind=BusKind.PQ, p=-0.2, q=-0.05, bsh=0.02),
            BusSpec(id=5, kind=BusKind.PQ, p=-0.1, q=-0.02),
        ],
        [
            BranchSpec(from_bus=1, to_bus=2, r=0.02, x=0.06, b=0.03),
            BranchSpec(from_bus=1, to_bus=3, r=0.05, x=0.19, b=0.02),
            BranchSpec(from_bus=2, to_bus=3, r=0.06, x=0.17, b=0.02),
            BranchSpec(from_bus=2, to_bus=4, r=0.06, x=0.18, b=0.02, tap=0.98),
            BranchSpec(from_bus=3, to_bus=4, r=0.01, x=0.04, shift=2.0),
            BranchSpec(from_bus=4, to_bus=5, r=0.08, x=0.24, b=0.025),
        ],
    )


@pytest.fixture
def feasible_twobus() -> Network:
    return twobus_network(0.5 + 0.4j)


@pytest.fixture
def infeasible_twobus() -> Network:
    return twobus_network(-0.3 + 0.0j)


@pytest.fixture
def pv_twobus() -> Network:
    return twobus_pv_network(x=0.2, p=1.0, vsp=1.0)


@pytest.fixture
def options() -> SolveOptions:
    return SolveOptions()


@pytest.fixture
def twobus_document() -> dict:
    return {
        "base_mva": 100.0,
        "buses": [
            {"id": 1, "type": "swing", "v": [1.0, 0.0]},
            {"id": 2, "type": "pq", "p": -0.5, "q": -0.4},
        ],
        "branches": [{"from": 1, "to": 2, "r": 0.0, "x": 1.0}],
    }


def sigma_document(sigma: complex) -> dict:
    """Case document realizing σ with Z = 1, so S = conj(σ)."""
    return {
        "base_mva": 100.0,
        "buses": [
            {"id": 1, "type": "swing", "v": [1.0, 0.0]},
            {"id": 2, "type": "pq", "p": sigma.real, "q": -sigma.imag},
        ],
        "branches": [{"from": 1, "to": 2, "r": 1.0, "x": 0.0}],
    }


@pytest.fixture
def write_case(tmp_path: Path) -> Callable[[dict, str], Path]:
    def _write(document: dict, name: str = "case.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def sigma_case(write_case) -> Callable[[complex, str], Path]:
    def _write(sigma: complex, name: str = "case.json") -> Path:
        return write_case(sigma_document(sigma), name)

    return _write
