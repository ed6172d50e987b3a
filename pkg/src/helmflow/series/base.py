from abc import ABC, abstractmethod
from dataclasses import dataclass
from logging import getLogger

import numpy as np
from numpy import ndarray
from scipy.sparse import bmat, coo_matrix, csr_matrix

from helmflow.exceptions import (
    DegenerateNetworkError,
    SeriesEvaluationError,
    SingularMatrixError,
    WhiteBranchError,
)
from helmflow.linsolve import Factorization, factor, solve
from helmflow.network.admittance import AdmittanceModel
from helmflow.network.model import Network
from helmflow.series.germ import GermSeries
from helmflow.settings.solver import EmbeddingKind
from helmflow.utilities.math.series_arithmetic import (
    cauchy_term,
    evaluate_series,
    reciprocal_term,
)

logger = getLogger(__name__)

WHITE_BRANCH_RTOL = 1e-12


@dataclass(frozen=True)
class CoefficientResiduals:
    """
    Per-order maxima of the coefficient identities of a germ.

    Attributes:
        embedded (ndarray): Order-N residual of the embedded current balance.
        mirror (ndarray): Order-N residual of the mirrored (hatted) half.
        reciprocal (ndarray): Deviation of Σ V̂[m]·W[N-m] from δ_{N,0}.
        constraint (ndarray): Deviation of the PV magnitude expansion (zeros without PV buses).
    """

    embedded: ndarray
    mirror: ndarray
    reciprocal: ndarray
    constraint: ndarray

    def max(self) -> float:
        return float(
            max(
                np.max(self.embedded, initial=0.0),
                np.max(self.mirror, initial=0.0),
                np.max(self.reciprocal, initial=0.0),
                np.max(self.constraint, initial=0.0),
            )
        )


class BaseEmbedding(ABC):
    def __init__(self, network: Network, model: AdmittanceModel) -> None:
        """
        Base class for holomorphic embeddings of the power-flow equations.

        Subclasses choose the matrix kept on the left-hand side, which shunts
        are scaled by s, the germ at s = 0 and the swing voltage schedule.
        Everything else (order-N recursion, the real doubled system for PV
        buses, residual evaluation) is shared.

        Args:
            network (Network): A validated network.
            model (AdmittanceModel): Its admittance model.
        """
        self.network = network
        self.model = model

        self.swing = network.swing_index
        self.others = np.array(network.non_swing_indices, dtype=int)
        self.reduced = {bus: r for r, bus in enumerate(self.others)}
        self.pv = list(network.pv_indices)
        self.pv_reduced = np.array([self.reduced[k] for k in self.pv], dtype=int)
        self.pq_reduced = np.array(
            [self.reduced[i] for i in network.pq_indices], dtype=int
        )

        full = self.system_matrix().tocsr()
        self.matrix = full
        self.a = full[self.others][:, self.others].tocsc()
        self.a_swing = np.asarray(
            full[self.others][:, [self.swing]].toarray()
        ).ravel()

        s = network.injections()
        self.s_conj = np.conj(s[self.others])
        self.shunt = self.embedded_shunt()[self.others]
        self._complex_factorization = None

        logger.debug("Initialized %s embedding", self.__class__.__name__)

    @property
    @abstractmethod
    def kind(self) -> EmbeddingKind: ...

    @abstractmethod
    def system_matrix(self) -> csr_matrix:
        """
        Admittance kept on the left-hand side at every order.
        """
        ...

    @abstractmethod
    def embedded_shunt(self) -> ndarray:
        """
        Per-bus shunt admittance multiplied by s on the right-hand side.
        """
        ...

    @abstractmethod
    def initial_voltages(self) -> ndarray:
        """
        Germ voltages V[0] at every bus, swing included.
        """
        ...

    @abstractmethod
    def swing_coefficient(self, order: int) -> complex:
        """
        Prescribed swing coefficient V_sw[order].
        """
        ...

    def init_white_germ(self) -> GermSeries:
        """
        Builds the order-0 germ of the zero-injection, energized network.

        Returns:
            GermSeries: Germ at order 0 with Q[0] = 0.
        Raises:
            WhiteBranchError: If any V_i[0] vanishes.
        """
        v0 = np.asarray(self.initial_voltages(), dtype=complex)
        scale = max(abs(self.network.vswing), 1.0)
        zero = np.flatnonzero(np.abs(v0) <= WHITE_BRANCH_RTOL * scale)
        if zero.size:
            raise WhiteBranchError(self.network.buses[zero[0]].id)

        base = np.abs(v0[self.pv]) ** 2
        slope = self.network.setpoints() ** 2 - base

        logger.debug("White germ initialized with %s embedding", self.kind)
        return GermSeries(
            embedding=self.kind,
            v=v0[None, :],
            q=np.zeros((1, len(self.pv)), dtype=float),
            w=(1.0 / np.conj(v0))[None, :],
            pv_indices=list(self.pv),
            constraint_base=base,
            constraint_slope=slope,
            factorization=None if self.pv else self._complex_factorization,
        )

    def _recursion_matrix(self, germ: GermSeries):
        """
        Coefficient matrix shared by every order N >= 1.

        Complex reduced admittance without PV buses; otherwise the real doubled
        system in unknowns (Re V, Im V, Q) of dimension 2(n-1) + n_pv.
        """
        if not self.pv:
            return self.a

        m = len(self.others)
        n_pv = len(self.pv)
        g = self.a.real
        b = self.a.imag
        v0 = germ.v[0, self.pv]
        w0 = germ.w[0, self.pv]
        pv_rows = np.arange(n_pv)

        q_re = coo_matrix((-w0.imag, (self.pv_reduced, pv_rows)), shape=(m, n_pv))
        q_im = coo_matrix((w0.real, (self.pv_reduced, pv_rows)), shape=(m, n_pv))
        c_re = coo_matrix((2 * v0.real, (pv_rows, self.pv_reduced)), shape=(n_pv, m))
        c_im = coo_matrix((2 * v0.imag, (pv_rows, self.pv_reduced)), shape=(n_pv, m))

        return bmat(
            [
                [g, -b, q_re],
                [b, g, q_im],
                [c_re, c_im, None],
            ],
            format="csc",
        )

    def complex_factorization(self) -> Factorization:
        """
        Factorization of the reduced complex admittance, computed once per embedding.

        Raises:
            DegenerateNetworkError: If the reduced admittance is singular.
        """
        if self._complex_factorization is None:
            try:
                self._complex_factorization = factor(self.a)
            except SingularMatrixError as e:
                raise DegenerateNetworkError(
                    f"reduced admittance matrix is singular at pivot {e.pivot}"
                ) from e
        return self._complex_factorization

    def _factor(self, germ: GermSeries) -> None:
        if germ.factorization is not None or len(self.others) == 0:
            return
        if not self.pv:
            germ.factorization = self.complex_factorization()
            return
        try:
            germ.factorization = factor(self._recursion_matrix(germ))
        except SingularMatrixError as e:
            raise DegenerateNetworkError(
                f"series recursion matrix is singular at pivot {e.pivot}"
            ) from e

    def _rhs(self, germ: GermSeries, order: int) -> ndarray:
        """
        Complex right-hand side of the order-N current balance, all known terms.
        """
        others = self.others
        rhs = -self.a_swing * self.swing_coefficient(order)
        rhs = rhs - self.shunt * germ.v[order - 1, others]
        rhs = rhs + self.s_conj * germ.w[order - 1, others]
        if self.pv:
            pv = self.pv
            reactive = cauchy_term(
                germ.q.astype(complex), germ.w[:, pv], order, start=1, stop=order - 1
            )
            rhs[self.pv_reduced] -= 1j * reactive
        return rhs

    def _constraint_rhs(self, germ: GermSeries, order: int) -> ndarray:
        v = germ.v[:, self.pv]
        known = cauchy_term(v, np.conj(v), order, start=1, stop=order - 1).real
        return (germ.constraint_slope if order == 1 else 0.0) - known

    def extend(self, germ: GermSeries, target_order: int) -> GermSeries:
        """
        Computes coefficients through ``target_order`` in place.

        Args:
            germ (GermSeries): Germ produced by this embedding.
            target_order (int): Highest order wanted.
        Returns:
            GermSeries: The same germ, extended.
        Raises:
            DegenerateNetworkError: If the recursion matrix is singular.
        """
        if target_order <= germ.order:
            return germ
        self._factor(germ)

        m = len(self.others)
        for order in range(germ.order + 1, target_order + 1):
            rhs = self._rhs(germ, order)
            v_row = np.empty(self.network.n, dtype=complex)
            q_row = np.zeros(len(self.pv), dtype=float)

            if m and self.pv:
                system_rhs = np.concatenate(
                    [rhs.real, rhs.imag, self._constraint_rhs(germ, order)]
                )
                x = solve(germ.factorization, system_rhs)
                v_row[self.others] = x[:m] + 1j * x[m : 2 * m]
                q_row = x[2 * m :]
            elif m:
                v_row[self.others] = solve(germ.factorization, rhs)

            v_row[self.swing] = self.swing_coefficient(order)

            v_hat = np.conj(np.vstack([germ.v, v_row[None, :]]))
            w_ext = np.vstack([germ.w, np.zeros((1, self.network.n), dtype=complex)])
            w_row = reciprocal_term(v_hat, w_ext, order)
            germ.append(v_row, q_row, w_row)

        logger.debug("Series extended to order %d", germ.order)
        return germ

    def embedded_residual(self, germ: GermSeries, s: complex) -> ndarray:
        """
        Residual of the doubled embedded system evaluated with the truncated series.

        Returns the current balance, its mirror image and the PV magnitude
        constraints stacked in one complex vector.

        Raises:
            SeriesEvaluationError: If a truncated V̂_i(s) or V_i(s) vanishes.
        """
        v = evaluate_series(germ.v, s)
        v_hat = evaluate_series(np.conj(germ.v), s)
        q = evaluate_series(germ.q, s) if self.pv else np.zeros(0, dtype=complex)

        others = self.others
        if np.any(v_hat[others] == 0) or np.any(v[others] == 0):
            raise SeriesEvaluationError(s, "truncated voltage series vanishes")

        injection = s * self.s_conj.astype(complex)
        mirror_injection = s * np.conj(self.s_conj).astype(complex)
        if self.pv:
            injection[self.pv_reduced] -= 1j * q
            mirror_injection[self.pv_reduced] += 1j * q

        shunt = self.embedded_shunt()
        first = (
            self.matrix @ v
        )[others] + s * shunt[others] * v[others] - injection / v_hat[others]
        mirror = (
            self.matrix.conj() @ v_hat
        )[others] + s * np.conj(shunt[others]) * v_hat[others] - mirror_injection / v[others]
        constraint = v[self.pv] * v_hat[self.pv] - (
            germ.constraint_base + s * germ.constraint_slope
        )
        return np.concatenate([first, mirror, constraint])

    def coefficient_residuals(self, germ: GermSeries) -> CoefficientResiduals:
        """
        Checks the order-by-order identities the recursion is built from.
        """
        others = self.others
        orders = germ.order + 1
        embedded = np.zeros(orders)
        mirror = np.zeros(orders)
        reciprocal = np.zeros(orders)
        constraint = np.zeros(orders)

        v_hat = np.conj(germ.v)
        w_mirror = np.conj(germ.w)
        shunt = self.embedded_shunt()[others]
        q = germ.q.astype(complex)
        pv = self.pv

        for order in range(orders):
            balance = (self.matrix @ germ.v[order])[others]
            mirrored = (self.matrix.conj() @ v_hat[order])[others]
            if order >= 1:
                balance += shunt * germ.v[order - 1, others] - self.s_conj * germ.w[order - 1, others]
                mirrored += (
                    np.conj(shunt) * v_hat[order - 1, others]
                    - np.conj(self.s_conj) * w_mirror[order - 1, others]
                )
            if pv:
                balance[self.pv_reduced] += 1j * cauchy_term(q, germ.w[:, pv], order)
                mirrored[self.pv_reduced] -= 1j * cauchy_term(q, w_mirror[:, pv], order)
                expected = {0: germ.constraint_base, 1: germ.constraint_slope}.get(order, 0.0)
                magnitude = cauchy_term(germ.v[:, pv], v_hat[:, pv], order)
                constraint[order] = np.max(np.abs(magnitude - expected), initial=0.0)

            identity = cauchy_term(v_hat, germ.w, order) - (1.0 if order == 0 else 0.0)

            embedded[order] = np.max(np.abs(balance), initial=0.0)
            mirror[order] = np.max(np.abs(mirrored), initial=0.0)
            reciprocal[order] = np.max(np.abs(identity), initial=0.0)

        return CoefficientResiduals(embedded, mirror, reciprocal, constraint)
