from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from numpy import ndarray

from helmflow.linsolve import Factorization
from helmflow.settings.solver import EmbeddingKind


@dataclass
class GermSeries:
    """
    Power-series coefficients of the white germ, grown order by order.

    Rows are orders, columns are buses (or PV buses for ``q``). The hatted
    series are never stored: V̂_i[n] is ``conj(v[n, i])``, which is the
    reflection condition written coefficient-wise.

    Attributes:
        embedding (EmbeddingKind): Embedding that generated the coefficients.
        v (ndarray): Complex voltage coefficients, shape (order + 1, n); swing column included.
        q (ndarray): Real reactive coefficients of the PV buses, shape (order + 1, n_pv).
        w (ndarray): Coefficients of 1/V̂_i, shape (order + 1, n).
        pv_indices (List[int]): Bus positions of the ``q`` columns.
        constraint_base (ndarray): Squared PV magnitudes at s = 0.
        constraint_slope (ndarray): vsp² minus ``constraint_base``.
        factorization (Optional[Factorization]): Recursion matrix, factored once on first extension.
    """

    embedding: EmbeddingKind
    v: ndarray
    q: ndarray
    w: ndarray
    pv_indices: List[int]
    constraint_base: ndarray
    constraint_slope: ndarray
    factorization: Optional[Factorization] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.v.shape[0] - 1

    @property
    def n(self) -> int:
        return self.v.shape[1]

    def voltage_series(self, bus: int) -> ndarray:
        """Coefficients V_i[0..N] of one bus position."""
        return self.v[:, bus].copy()

    def reactive_series(self, pv_position: int) -> ndarray:
        """Coefficients Q_k[0..N] of the ``pv_position``-th PV bus."""
        return self.q[:, pv_position].copy()

    def append(self, v_row: ndarray, q_row: ndarray, w_row: ndarray) -> None:
        self.v = np.vstack([self.v, v_row[None, :]])
        self.q = np.vstack([self.q, q_row[None, :]])
        self.w = np.vstack([self.w, w_row[None, :]])
