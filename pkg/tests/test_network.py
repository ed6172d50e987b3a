import numpy as np
import pytest
from numpy.testing import assert_allclose

from helmflow.exceptions import (
    DimensionMismatchError,
    DisconnectedBusError,
    DuplicateBusError,
    InvalidBranchError,
    InvalidBusError,
    SwingBusError,
    UnknownBusError,
    ZeroImpedanceError,
    ZeroVoltageError,
)
from helmflow.network import (
    BranchSpec,
    BusKind,
    BusSpec,
    Network,
    build_admittance,
    mismatch,
    mismatch_norm,
)
from helmflow.oracle import TwoBusCase, twobus_closed_form, twobus_network


def _swing(bus_id: int = 1) -> BusSpec:
    return BusSpec(id=bus_id, kind=BusKind.SWING)


def _pq(bus_id: int, p: float = -0.1, q: float = 0.0) -> BusSpec:
    return BusSpec(id=bus_id, kind=BusKind.PQ, p=p, q=q)


def test_network_index_maps(mesh_network):
    assert mesh_network.n == 5
    assert mesh_network.swing_index == 0
    assert mesh_network.pq_indices == [1, 3, 4]
    assert mesh_network.pv_indices == [2]
    assert mesh_network.non_swing_indices == [1, 2, 3, 4]
    assert mesh_network.has_pv
    assert mesh_network.bus_ids() == [1, 2, 3, 4, 5]
    assert_allclose(mesh_network.setpoints(), [1.01])


def test_injections_use_reactive_values_of_pv_buses(mesh_network):
    s = mesh_network.injections(q_pv=np.array([0.25]))
    assert s[0] == 0
    assert s[1] == complex(-0.3, -0.1)
    assert s[2] == complex(0.2, 0.25)
    assert mesh_network.injections()[2] == complex(0.2, 0.0)


@pytest.mark.parametrize(
    "buses, branches, error, match",
    [
        ([_swing(), _pq(1)], [], DuplicateBusError, "Duplicate bus id 1"),
        ([_pq(1), _pq(2)], [BranchSpec(from_bus=1, to_bus=2, x=1)], SwingBusError, "no swing bus"),
        (
            [_swing(1), _swing(2)],
            [BranchSpec(from_bus=1, to_bus=2, x=1)],
            SwingBusError,
            "multiple swing buses",
        ),
        ([_swing(), _pq(2)], [BranchSpec(from_bus=1, to_bus=3, x=1)], UnknownBusError, "unknown bus 3"),
        ([_swing(), _pq(2)], [BranchSpec(from_bus=1, to_bus=2)], ZeroImpedanceError, "zero series"),
        (
            [_swing(), _pq(2)],
            [BranchSpec(from_bus=1, to_bus=2, x=1, tap=0.0)],
            InvalidBranchError,
            "tap",
        ),
        ([_swing(), _pq(2)], [BranchSpec(from_bus=2, to_bus=2, x=1)], InvalidBranchError, "equal"),
        (
            [_swing(), BusSpec(id=2, kind=BusKind.PV, vsp=0.0)],
            [BranchSpec(from_bus=1, to_bus=2, x=1)],
            InvalidBusError,
            "setpoint",
        ),
        ([_swing(0), _pq(2)], [BranchSpec(from_bus=0, to_bus=2, x=1)], InvalidBusError, "positive"),
    ],
)
def test_invalid_networks_raise_designated_errors(buses, branches, error, match):
    with pytest.raises(error, match=match):
        Network(buses, branches)


def test_disconnected_bus_is_named():
    with pytest.raises(DisconnectedBusError) as excinfo:
        Network(
            [_swing(), _pq(2), _pq(3), _pq(4)],
            [BranchSpec(from_bus=1, to_bus=2, x=1), BranchSpec(from_bus=3, to_bus=4, x=1)],
        )
    assert excinfo.value.bus_id == 3


def test_single_line_admittance():
    network = Network([_swing(), _pq(2)], [BranchSpec(from_bus=1, to_bus=2, x=1.0)])
    model = build_admittance(network)
    assert_allclose(model.y_full.toarray(), [[-1j, 1j], [1j, -1j]])
    assert_allclose(model.y_sh, [0, 0], atol=1e-15)


def test_tap_and_shift_stamps():
    network = Network(
        [_swing(), _pq(2)],
        [BranchSpec(from_bus=1, to_bus=2, r=0.1, x=0.5, b=0.2, tap=1.05, shift=10.0)],
    )
    y = 1 / complex(0.1, 0.5)
    t, theta = 1.05, np.deg2rad(10.0)
    expected = np.array(
        [
            [(y + 0.1j) / t**2, -y / (t * np.exp(-1j * theta))],
            [-y / (t * np.exp(1j * theta)), y + 0.1j],
        ]
    )
    assert_allclose(build_admittance(network).y_full.toarray(), expected, rtol=1e-14)


def test_canonical_split_reconstructs_full_matrix(mesh_network):
    model = build_admittance(mesh_network)
    full = model.y_full.toarray()
    assert_allclose(model.y_tr.toarray() + np.diag(model.y_sh), full, atol=1e-14)
    assert_allclose(model.y_tr.toarray().sum(axis=1), 0, atol=1e-12)
    assert_allclose(model.y_sh, full.sum(axis=1), atol=1e-12)


def test_bus_shunts_land_on_diagonal():
    network = Network(
        [_swing(), BusSpec(id=2, kind=BusKind.PQ, gsh=0.01, bsh=0.05)],
        [BranchSpec(from_bus=1, to_bus=2, x=1.0)],
    )
    assert_allclose(build_admittance(network).y_sh, [0, 0.01 + 0.05j], atol=1e-15)


def test_mismatch_vanishes_at_closed_form_solution():
    sigma = 0.2 + 0.1j
    network = twobus_network(sigma)
    u = twobus_closed_form(TwoBusCase(sigma), 1.0)
    v = np.array([1.0, u])
    model = build_admittance(network)
    assert mismatch_norm(network, model, v) < 1e-14
    assert mismatch(network, model, v)[0] == 0


def test_perturbed_solution_has_nonzero_mismatch():
    sigma = 0.2 + 0.1j
    network = twobus_network(sigma)
    u = twobus_closed_form(TwoBusCase(sigma), 1.0)
    model = build_admittance(network)
    assert mismatch_norm(network, model, np.array([1.0, u + 1e-3])) > 1e-4


def test_mismatch_rejects_bad_inputs(feasible_twobus):
    model = build_admittance(feasible_twobus)
    with pytest.raises(DimensionMismatchError):
        mismatch(feasible_twobus, model, np.ones(3))
    with pytest.raises(ZeroVoltageError) as excinfo:
        mismatch(feasible_twobus, model, np.array([1.0, 0.0]))
    assert excinfo.value.bus_id == 2
