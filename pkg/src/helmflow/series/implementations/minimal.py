from logging import getLogger

import numpy as np
from numpy import ndarray
from scipy.sparse import csr_matrix

from helmflow.linsolve import solve
from helmflow.series.base import BaseEmbedding
from helmflow.settings.solver import EmbeddingKind

logger = getLogger(__name__)


class MinimalEmbedding(BaseEmbedding):
    """
    Embedding that scales only the constant-power injections by s.

    Σ_k Y_ik V_k(s) = s·S_i*/V̂_i(s) with the swing held at its setpoint. The
    germ is the open-circuit state of the full network, shunts included, so
    V[0] generally differs from the swing voltage when shunts are present.
    """

    @property
    def kind(self) -> EmbeddingKind:
        return EmbeddingKind.MINIMAL

    def system_matrix(self) -> csr_matrix:
        return self.model.y_full

    def embedded_shunt(self) -> ndarray:
        return np.zeros(self.network.n, dtype=complex)

    def initial_voltages(self) -> ndarray:
        """
        Solves Σ_k Y_ik V_k(0) = 0 over non-swing buses with V_sw(0) = vswing.
        """
        v0 = np.empty(self.network.n, dtype=complex)
        v0[self.swing] = self.network.vswing
        if len(self.others):
            v0[self.others] = solve(
                self.complex_factorization(), -self.a_swing * self.network.vswing
            )
        logger.debug("Open-circuit germ computed for %d buses", len(self.others))
        return v0

    def swing_coefficient(self, order: int) -> complex:
        return self.network.vswing if order == 0 else 0.0
