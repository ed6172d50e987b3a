import numpy as np
from numpy import ndarray
from scipy.sparse import csr_matrix

from helmflow.series.base import BaseEmbedding
from helmflow.settings.solver import EmbeddingKind


class CanonicalEmbedding(BaseEmbedding):
    """
    Embedding that also scales every shunt by s.

    Σ_k Y^tr_ik V_k(s) = -s·Y^sh_i V_i(s) + s·S_i*/V̂_i(s), with the swing
    ramped as V_sw(s) = 1 + s(vswing - 1). Since Y^tr has zero row sums the
    germ is the flat all-ones state for every network.
    """

    @property
    def kind(self) -> EmbeddingKind:
        return EmbeddingKind.CANONICAL

    def system_matrix(self) -> csr_matrix:
        return self.model.y_tr

    def embedded_shunt(self) -> ndarray:
        return self.model.y_sh

    def initial_voltages(self) -> ndarray:
        return np.ones(self.network.n, dtype=complex)

    def swing_coefficient(self, order: int) -> complex:
        if order == 0:
            return 1.0
        if order == 1:
            return self.network.vswing - 1.0
        return 0.0
