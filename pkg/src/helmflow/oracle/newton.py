from dataclasses import dataclass
from logging import getLogger
from typing import Optional, Union

import numpy as np
from numpy import ndarray
from scipy.linalg import LinAlgError, solve

from helmflow.network.admittance import build_admittance
from helmflow.network.model import Network
from helmflow.settings.oracle import OracleSettings

logger = getLogger(__name__)


@dataclass(frozen=True)
class NewtonSolution:
    """
    Converged Newton-Raphson state.

    Attributes:
        v (ndarray): Complex bus voltages in bus order.
        q_pv (ndarray): Reactive injections of the PV buses.
        iterations (int): Newton steps taken.
        mismatch (float): Final maximum power mismatch.
    """

    v: ndarray
    q_pv: ndarray
    iterations: int
    mismatch: float


@dataclass(frozen=True)
class NonConvergence:
    """
    Newton-Raphson stopped without meeting the tolerance.
    """

    iterations: int
    mismatch: float
    reason: str


def _power_derivatives(y: ndarray, v: ndarray):
    current = y @ v
    diag_v = np.diag(v)
    diag_i = np.diag(current)
    diag_unit = np.diag(v / np.abs(v))
    ds_dvm = diag_v @ np.conj(y @ diag_unit) + np.conj(diag_i) @ diag_unit
    ds_dva = 1j * diag_v @ np.conj(diag_i - y @ diag_v)
    return ds_dva, ds_dvm


def newton_raphson(
    network: Network,
    flat_start: bool = True,
    settings: Optional[OracleSettings] = None,
    initial: Optional[ndarray] = None,
) -> Union[NewtonSolution, NonConvergence]:
    """
    Polar Newton-Raphson power flow with a dense Jacobian.

    PQ buses carry angle and magnitude unknowns, PV buses only the angle; no
    reactive limits are enforced. Intended for small cross-validation cases.

    Args:
        network (Network): A validated network.
        flat_start (bool): Start from unit magnitudes (setpoints at PV buses) at
            the swing angle. Ignored when ``initial`` is given.
        settings (Optional[OracleSettings]): Tolerance and iteration budget.
        initial (Optional[ndarray]): Explicit complex starting voltages.
    Returns:
        Union[NewtonSolution, NonConvergence]: The solution, or a non-convergence value.
    """
    settings = settings or OracleSettings()
    y = build_admittance(network).y_full.toarray()
    s_spec = network.injections()

    pv = np.array(network.pv_indices, dtype=int)
    pq = np.array(network.pq_indices, dtype=int)
    pvpq = np.concatenate([pv, pq])

    if initial is not None:
        v = np.asarray(initial, dtype=complex).copy()
    elif flat_start:
        v = np.full(network.n, np.exp(1j * np.angle(network.vswing)))
    else:
        v = np.ones(network.n, dtype=complex)
    v[network.swing_index] = network.vswing
    if len(pv):
        v[pv] = network.setpoints() * np.exp(1j * np.angle(v[pv]))

    def residual(v: ndarray) -> ndarray:
        s_calc = v * np.conj(y @ v)
        delta = s_calc - s_spec
        return np.concatenate([delta.real[pvpq], delta.imag[pq]])

    f = residual(v)
    norm = float(np.max(np.abs(f), initial=0.0))
    iterations = 0

    while norm > settings.tolerance:
        if iterations >= settings.max_iterations:
            logger.warning(
                "Newton-Raphson did not converge in %d iterations (mismatch %.3e)",
                iterations,
                norm,
            )
            return NonConvergence(iterations, norm, "iteration budget exhausted")

        ds_dva, ds_dvm = _power_derivatives(y, v)
        jacobian = np.block(
            [
                [ds_dva.real[np.ix_(pvpq, pvpq)], ds_dvm.real[np.ix_(pvpq, pq)]],
                [ds_dva.imag[np.ix_(pq, pvpq)], ds_dvm.imag[np.ix_(pq, pq)]],
            ]
        )
        try:
            dx = solve(jacobian, -f)
        except LinAlgError as e:
            logger.warning("Newton-Raphson Jacobian is singular: %s", e)
            return NonConvergence(iterations, norm, "singular Jacobian")

        angle = np.angle(v)
        magnitude = np.abs(v)
        angle[pvpq] += dx[: len(pvpq)]
        magnitude[pq] += dx[len(pvpq) :]
        v = magnitude * np.exp(1j * angle)
        iterations += 1

        f = residual(v)
        norm = float(np.max(np.abs(f), initial=0.0))
        if not np.isfinite(norm):
            logger.warning("Newton-Raphson diverged after %d iterations", iterations)
            return NonConvergence(iterations, norm, "diverged")

    q_pv = np.imag(v * np.conj(y @ v))[pv] if len(pv) else np.zeros(0)
    logger.debug("Newton-Raphson converged in %d iterations", iterations)
    return NewtonSolution(v=v, q_pv=q_pv, iterations=iterations, mismatch=norm)
