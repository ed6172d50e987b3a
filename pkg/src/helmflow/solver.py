from dataclasses import dataclass
from logging import getLogger
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy import ndarray

from helmflow.exceptions import DegeneratePadeTableError, HelmFlowError
from helmflow.network.admittance import AdmittanceModel, build_admittance
from helmflow.network.mismatch import mismatch_norm
from helmflow.network.model import BusKind, Network
from helmflow.pade import (
    PadeResult,
    PadeStatus,
    estimate_branch_points,
    estimate_convergence_radius,
    eval_first_stable,
)
from helmflow.report import (
    BusDiagnostics,
    BusVoltage,
    ScanPoint,
    ScanResult,
    SolveReport,
    SolveStatus,
)
from helmflow.series import GermSeries, get_embedding
from helmflow.settings.root import Settings
from helmflow.settings.solver import SolveOptions
from helmflow.utilities.math.angles import to_polar_degrees
from helmflow.utilities.validators import validate_scan_grid

logger = getLogger(__name__)


@dataclass
class _SeriesEvaluation:
    bus: int
    quantity: str
    coeffs: ndarray
    result: PadeResult
    collapse: Optional[List[float]] = None


class HelmSolver:
    """
    Runs HELM solves: builds the white germ, extends it order by order and
    continues every voltage (and PV reactive) series to s = 1 with Padé.
    """

    def __init__(self, settings: Optional[Settings] = None) -> None:
        """
        Args:
            settings (Optional[Settings]): Library settings. If None, defaults to environment-based Settings.
        """
        self.settings = settings or Settings()

    def _series(
        self, network: Network, germ: GermSeries
    ) -> List[Tuple[int, str, ndarray]]:
        series = [(i, "v", germ.voltage_series(i)) for i in network.non_swing_indices]
        series += [
            (k, "q", germ.reactive_series(position).astype(complex))
            for position, k in enumerate(germ.pv_indices)
        ]
        return series

    def _evaluate(
        self, network: Network, germ: GermSeries, s: float, tol: float, start: int = 0
    ) -> List[_SeriesEvaluation]:
        return [
            _SeriesEvaluation(
                bus,
                quantity,
                coeffs,
                eval_first_stable(coeffs, s, tol, self.settings.pade, start),
            )
            for bus, quantity, coeffs in self._series(network, germ)
        ]

    @staticmethod
    def _poles(coeffs: ndarray, order: int) -> Tuple[List[complex], int]:
        """Pole estimates at the highest non-degenerate M <= ``order``, and that M."""
        m = min(order, (len(coeffs) - 1) // 2)
        while m > 0:
            try:
                return estimate_branch_points(coeffs, m), m
            except DegeneratePadeTableError:
                m -= 1
        return [], 0

    @staticmethod
    def _positive_real(poles: List[complex], imag_tol: float) -> List[float]:
        return [p.real for p in poles if abs(p.imag) <= imag_tol and p.real > 0]

    def _locate(self, evaluation: _SeriesEvaluation, options: SolveOptions) -> None:
        """
        Fills in the pole estimates of one series and the positive real poles
        that persist, within ``pole_persistence_rtol``, from M - 2 to M.
        """
        poles, m = self._poles(evaluation.coeffs, options.pole_order)
        evaluation.result.pole_estimates = poles
        evaluation.collapse = []
        if m <= 2:
            return
        reference, _ = self._poles(evaluation.coeffs, m - 2)
        lower = self._positive_real(reference, options.pole_imag_tol)
        evaluation.collapse = sorted(
            p
            for p in self._positive_real(poles, options.pole_imag_tol)
            if any(abs(p - q) <= options.pole_persistence_rtol * p for q in lower)
        )

    def _assemble(
        self, network: Network, germ: GermSeries, evaluations: List[_SeriesEvaluation]
    ) -> Tuple[ndarray, ndarray]:
        v = germ.v[0].copy()
        v[network.swing_index] = network.vswing
        q = np.zeros(len(germ.pv_indices), dtype=float)
        pv_position = {k: p for p, k in enumerate(germ.pv_indices)}
        for evaluation in evaluations:
            if evaluation.quantity == "v":
                v[evaluation.bus] = evaluation.result.final_value
            else:
                q[pv_position[evaluation.bus]] = evaluation.result.final_value.real
        return v, q

    @staticmethod
    def _gate(
        network: Network, model: AdmittanceModel, v: ndarray, q: ndarray
    ) -> Tuple[Optional[float], Optional[float]]:
        """
        Current mismatch of the original equations and the PV setpoint deviation.
        """
        if not np.all(np.isfinite(v)) or np.any(v == 0):
            return None, None
        norm = mismatch_norm(network, model, v, q)
        deviation = None
        if network.pv_indices:
            deviation = float(
                np.max(np.abs(np.abs(v[network.pv_indices]) - network.setpoints()))
            )
        return norm, deviation

    @staticmethod
    def _bus_states(network: Network, v: ndarray, q: ndarray) -> List[BusVoltage]:
        magnitude, angle = to_polar_degrees(v)
        pv_position = {k: p for p, k in enumerate(network.pv_indices)}
        return [
            BusVoltage(
                id=bus.id,
                kind=bus.kind,
                v=(float(v[i].real), float(v[i].imag)),
                v_polar=(float(magnitude[i]), float(angle[i])),
                q=float(q[pv_position[i]]) if bus.kind == BusKind.PV else None,
            )
            for i, bus in enumerate(network.buses)
        ]

    def _diagnostics(
        self,
        network: Network,
        evaluations: List[_SeriesEvaluation],
        options: SolveOptions,
    ) -> List[BusDiagnostics]:
        diagnostics = []
        for evaluation in evaluations:
            result = evaluation.result
            if options.collect_poles and evaluation.collapse is None:
                self._locate(evaluation, options)
            radius = estimate_convergence_radius(evaluation.coeffs)
            values = result.values
            last_step = abs(values[-1] - values[-2]) if len(values) > 1 else None
            poles = result.pole_estimates or []
            diagnostics.append(
                BusDiagnostics(
                    bus_id=network.buses[evaluation.bus].id,
                    quantity=evaluation.quantity,
                    status=result.status,
                    converged_at=result.converged_at,
                    last_step=None if last_step is None else float(last_step),
                    breakdowns=result.breakdowns,
                    convergence_radius=radius if np.isfinite(radius) else None,
                    values=[(float(x.real), float(x.imag)) for x in values],
                    pole_estimates=[(float(p.real), float(p.imag)) for p in poles],
                )
            )
        return diagnostics

    @staticmethod
    def _real_poles(evaluations: List[_SeriesEvaluation]) -> List[float]:
        return sorted(
            pole for evaluation in evaluations for pole in evaluation.collapse or []
        )

    def solve(
        self, network: Network, options: Optional[SolveOptions] = None
    ) -> SolveReport:
        """
        Solves the power flow of ``network`` by holomorphic embedding.

        The germ is extended in ``order_step`` increments; after each increment
        every series is evaluated at s = 1. When all of them converge the
        candidate voltages must also pass the mismatch gate; after a rejection
        only diagonal windows built on newer orders may fire. At the order budget
        the outcome is NoSolution if a real pole estimate on (0, 1] persists from
        the [M-2/M-2] to the [M/M] denominator, else OrderBudgetExhausted.

        Args:
            network (Network): A validated network.
            options (Optional[SolveOptions]): Solve options; the settings' solver section when None.
        Returns:
            SolveReport: Status, voltages, PV reactive injections and diagnostics.
        Raises:
            WhiteBranchError: If the germ has a vanishing voltage.
            DegenerateNetworkError: If the recursion matrix is singular.
            HelmFlowError: For any other failure during the solve.
        """
        options = options or self.settings.solver
        logger.info(
            "Solving %d-bus network with %s embedding (max order %d)",
            network.n,
            options.embedding,
            options.max_order,
        )
        try:
            return self._solve(network, options)
        except HelmFlowError:
            raise
        except Exception as e:
            raise HelmFlowError(f"Unexpected error during solve: {e}") from e

    def _solve(self, network: Network, options: SolveOptions) -> SolveReport:
        model = build_admittance(network)
        embedding = get_embedding(options.embedding, network, model)
        germ = embedding.init_white_germ()

        target = min(options.order_step, options.max_order)
        start = 0
        evaluations: List[_SeriesEvaluation] = []
        while True:
            embedding.extend(germ, target)

            if not np.any(germ.v[1:]) and not np.any(germ.q[1:]):
                v, q = germ.v[0].copy(), germ.q[0].copy()
                norm, deviation = self._gate(network, model, v, q)
                logger.info("Germ is exact; solve converged at order 0")
                return SolveReport(
                    status=SolveStatus.CONVERGED,
                    embedding=options.embedding,
                    order_used=0,
                    mismatch_norm=norm,
                    setpoint_deviation=deviation,
                    mismatch_tol=options.mismatch_tol,
                    buses=self._bus_states(network, v, q),
                )

            evaluations = self._evaluate(
                network, germ, 1.0, options.pade_tol, start
            )
            pending = sum(not e.result.converged for e in evaluations)
            logger.debug("Order %d: %d series not converged", germ.order, pending)

            if pending == 0:
                v, q = self._assemble(network, germ, evaluations)
                norm, deviation = self._gate(network, model, v, q)
                within = norm is not None and norm <= options.mismatch_tol
                if within and (deviation is None or deviation <= options.mismatch_tol):
                    logger.info(
                        "Converged at order %d (mismatch %.3e)", germ.order, norm
                    )
                    return self._report(
                        network,
                        SolveStatus.CONVERGED,
                        germ,
                        evaluations,
                        options,
                        v,
                        q,
                        norm,
                        deviation,
                    )
                logger.debug(
                    "Padé values at order %d rejected by mismatch gate (%s)",
                    germ.order,
                    norm,
                )
                start = germ.order // 2 + 1

            if target >= options.max_order:
                break
            target = min(target + options.order_step, options.max_order)

        v, q = self._assemble(network, germ, evaluations)
        norm, deviation = self._gate(network, model, v, q)
        for evaluation in evaluations:
            self._locate(evaluation, options)
        collapse = [pole for pole in self._real_poles(evaluations) if pole <= 1.0]
        status = (
            SolveStatus.NO_SOLUTION if collapse else SolveStatus.ORDER_BUDGET_EXHAUSTED
        )
        logger.warning(
            "No convergence through order %d: %s", germ.order, status.value
        )
        return self._report(
            network, status, germ, evaluations, options, v, q, norm, deviation
        )

    def _report(
        self,
        network: Network,
        status: SolveStatus,
        germ: GermSeries,
        evaluations: List[_SeriesEvaluation],
        options: SolveOptions,
        v: ndarray,
        q: ndarray,
        norm: Optional[float],
        deviation: Optional[float],
    ) -> SolveReport:
        diagnostics = self._diagnostics(network, evaluations, options)
        real_poles = self._real_poles(evaluations)
        collapse = real_poles[0] if real_poles else None

        note = None
        if status == SolveStatus.NO_SOLUTION:
            note = (
                f"singularity estimated on the real axis at s={collapse:.6g}; "
                "classification is a finite-order heuristic"
            )
        elif status == SolveStatus.ORDER_BUDGET_EXHAUSTED:
            note = (
                f"undecided at order {germ.order}; no real singularity "
                "estimated on (0, 1]"
            )

        return SolveReport(
            status=status,
            embedding=options.embedding,
            order_used=germ.order,
            mismatch_norm=norm,
            setpoint_deviation=deviation,
            mismatch_tol=options.mismatch_tol,
            buses=self._bus_states(network, v, q),
            diagnostics=diagnostics,
            collapse_estimate=collapse,
            note=note,
        )

    def solve_pv(
        self, network: Network, options: Optional[SolveOptions] = None
    ) -> SolveReport:
        """
        Solves a network with PV buses; the reported Q values are Q_k(1).

        Raises:
            HelmFlowError: If the network has no PV bus.
        """
        if not network.has_pv:
            raise HelmFlowError("solve_pv requires at least one PV bus")
        return self.solve(network, options)

    def series(
        self,
        network: Network,
        options: Optional[SolveOptions] = None,
        order: Optional[int] = None,
    ) -> GermSeries:
        """
        Germ extended to ``order`` (``max_order`` when None), for dumps and diagnostics.
        """
        options = options or self.settings.solver
        model = build_admittance(network)
        embedding = get_embedding(options.embedding, network, model)
        target = options.max_order if order is None else order
        return embedding.extend(embedding.init_white_germ(), target)

    def scan(
        self,
        network: Network,
        s_values: Sequence[float],
        options: Optional[SolveOptions] = None,
    ) -> ScanResult:
        """
        Evaluates the germ at every s of an ascending grid in (0, 1].

        The germ is built once to ``max_order``. Each series is read at the
        first truncation whose diagonal window agrees, and a point reports
        per-bus voltages when every series converges there.

        Raises:
            SeriesDataError: If the grid is empty, unsorted or outside (0, 1].
        """
        options = options or self.settings.solver
        grid = validate_scan_grid(s_values)
        try:
            model = build_admittance(network)
            embedding = get_embedding(options.embedding, network, model)
            germ = embedding.extend(embedding.init_white_germ(), options.max_order)
        except HelmFlowError:
            raise
        except Exception as e:
            raise HelmFlowError(f"Unexpected error during scan: {e}") from e

        points = []
        max_converged_s = None
        prefix = True
        for s in grid:
            evaluations = self._evaluate(network, germ, s, options.pade_tol)
            if all(e.result.converged for e in evaluations):
                v, q = self._assemble(network, germ, evaluations)
                v[network.swing_index] = embedding.swing_coefficient(0) + s * (
                    embedding.swing_coefficient(1)
                )
                points.append(
                    ScanPoint(
                        s=s,
                        status=PadeStatus.CONVERGED,
                        v=[(float(x.real), float(x.imag)) for x in v],
                        q_pv=[float(x) for x in q],
                    )
                )
                if prefix:
                    max_converged_s = s
            else:
                points.append(ScanPoint(s=s, status=PadeStatus.NOT_CONVERGED))
                prefix = False

        logger.info("Scan reached s=%s over %d points", max_converged_s, len(grid))
        return ScanResult(
            bus_ids=network.bus_ids(),
            order_used=germ.order,
            points=points,
            max_converged_s=max_converged_s,
        )


def solve(network: Network, options: Optional[SolveOptions] = None) -> SolveReport:
    """Solves ``network`` with a default :class:`HelmSolver`."""
    return HelmSolver().solve(network, options)


def solve_pv(network: Network, options: Optional[SolveOptions] = None) -> SolveReport:
    return HelmSolver().solve_pv(network, options)


def scan(
    network: Network, options: Optional[SolveOptions], s_values: Sequence[float]
) -> ScanResult:
    """Scans ``network`` along ``s_values`` with a default :class:`HelmSolver`."""
    return HelmSolver().scan(network, s_values, options)
