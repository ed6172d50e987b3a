import numpy as np
from numpy import ndarray

from helmflow.exceptions import DimensionMismatchError, ZeroVoltageError
from helmflow.network.admittance import AdmittanceModel
from helmflow.network.model import Network


def mismatch(
    network: Network, model: AdmittanceModel, v: ndarray, q_pv: ndarray = None
) -> ndarray:
    """
    Current-balance residual of the power-flow equations, Σ_k Y_ik v_k - S_i*/v_i*.

    Args:
        network (Network): The network whose injections are used.
        model (AdmittanceModel): Its admittance model.
        v (ndarray): Complex bus voltages in bus order.
        q_pv (ndarray): Reactive injections of the PV buses; zero when omitted.
    Returns:
        ndarray: Complex residual per bus, the swing entry set to zero.
    Raises:
        DimensionMismatchError: If ``v`` or ``q_pv`` has the wrong length.
        ZeroVoltageError: If any voltage is zero.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (network.n,):
        raise DimensionMismatchError(network.n, v.size, "voltage vector")
    if q_pv is not None and len(q_pv) != len(network.pv_indices):
        raise DimensionMismatchError(len(network.pv_indices), len(q_pv), "q_pv")

    zero = np.flatnonzero(v == 0)
    if zero.size:
        raise ZeroVoltageError(network.buses[zero[0]].id)

    s = network.injections(q_pv)
    residual = model.y_full @ v - np.conj(s) / np.conj(v)
    residual[network.swing_index] = 0.0
    return residual


def mismatch_norm(
    network: Network, model: AdmittanceModel, v: ndarray, q_pv: ndarray = None
) -> float:
    """Infinity norm of :func:`mismatch`."""
    return float(np.max(np.abs(mismatch(network, model, v, q_pv)), initial=0.0))
