from dataclasses import dataclass
from logging import getLogger

import numpy as np
from numpy import ndarray
from scipy.sparse import csr_matrix, diags

from helmflow.network.model import Network

logger = getLogger(__name__)


@dataclass(frozen=True)
class AdmittanceModel:
    """
    Bus admittance matrix and its canonical transmission/shunt split.

    ``y_full`` is the stamped matrix; ``y_tr + diag(y_sh)`` reproduces it up to
    round-off, and every row of ``y_tr`` sums to zero up to round-off.

    Attributes:
        y_full (csr_matrix): Complete n x n admittance matrix.
        y_tr (csr_matrix): Transmission part with vanishing row sums.
        y_sh (ndarray): Length-n shunt vector (row sums of the stamped matrix).
    """

    y_full: csr_matrix
    y_tr: csr_matrix
    y_sh: ndarray


def build_admittance(network: Network) -> AdmittanceModel:
    """
    Stamps every branch and bus shunt into the admittance matrix.

    Branch pi-model with series admittance y = 1/(r + jx), tap t on the
    ``from`` side and shift θ:
    Y_ff += (y + jb/2)/t², Y_ft += -y/(t·e^{-jθ}), Y_tf += -y/(t·e^{jθ}),
    Y_tt += y + jb/2.

    Args:
        network (Network): A validated network.
    Returns:
        AdmittanceModel: Full matrix plus canonical split.
    """
    n = network.n
    rows, cols, values = [], [], []

    for branch in network.branches:
        f = network.index[branch.from_bus]
        t = network.index[branch.to_bus]
        y = 1.0 / complex(branch.r, branch.x)
        charging = 0.5j * branch.b
        theta = np.deg2rad(branch.shift)
        tap = branch.tap

        rows += [f, f, t, t]
        cols += [f, t, f, t]
        values += [
            (y + charging) / tap**2,
            -y / (tap * np.exp(-1j * theta)),
            -y / (tap * np.exp(1j * theta)),
            y + charging,
        ]

    for i, bus in enumerate(network.buses):
        if bus.gsh != 0 or bus.bsh != 0:
            rows.append(i)
            cols.append(i)
            values.append(bus.shunt)

    stamped = csr_matrix(
        (np.asarray(values, dtype=complex), (rows, cols)), shape=(n, n)
    )
    stamped.sum_duplicates()

    y_sh = np.asarray(stamped.sum(axis=1)).ravel().astype(complex)
    y_tr = (stamped - diags(y_sh, format="csr")).tocsr()
    y_full = stamped

    logger.debug(
        "Admittance matrix built: %d buses, %d non-zeros", n, y_full.nnz
    )
    return AdmittanceModel(y_full=y_full, y_tr=y_tr, y_sh=y_sh)
