"""
Factor-once / solve-many sparse linear algebra.

The series recursion solves one linear system per order against the same
coefficient matrix, so the matrix is factored a single time with SuperLU
(COLAMD column ordering, partial pivoting) and every order reuses it.
"""

from logging import getLogger

import numpy as np
from numpy import ndarray
from scipy.linalg import lu_factor
from scipy.sparse import csc_matrix, issparse
from scipy.sparse.linalg import SuperLU, splu

from helmflow.exceptions import DimensionMismatchError, SingularMatrixError

logger = getLogger(__name__)

PERMC_SPEC = "COLAMD"
PIVOT_RTOL = 1e-13


class Factorization:
    """
    LU decomposition of a square sparse matrix, real or complex.

    Attributes:
        dimension (int): Size of the factored matrix.
        dtype (numpy.dtype): Scalar type of the factored matrix.
        solve_count (int): Number of right-hand sides solved so far.
    """

    def __init__(self, lu: SuperLU, dimension: int, dtype: np.dtype):
        self._lu = lu
        self.dimension = dimension
        self.dtype = dtype
        self.solve_count = 0

    def solve(self, rhs: ndarray) -> ndarray:
        return solve(self, rhs)


def _first_bad_pivot(dense: ndarray) -> int:
    _, piv_u = lu_factor(dense, check_finite=False)
    pivots = np.abs(np.diag(piv_u))
    scale = max(float(np.max(np.abs(dense), initial=0.0)), 1.0)
    bad = np.flatnonzero(pivots <= PIVOT_RTOL * scale)
    return int(bad[0]) if bad.size else -1


def factor(matrix) -> Factorization:
    """
    Factors a square sparse (or dense) matrix for repeated solves.

    Args:
        matrix: Square scipy sparse matrix or ndarray, real or complex.
    Returns:
        Factorization: Reusable decomposition.
    Raises:
        DimensionMismatchError: If the matrix is not square.
        SingularMatrixError: If the matrix is numerically singular; carries the
            index of the first vanishing pivot.
    """
    a = csc_matrix(matrix) if not issparse(matrix) else matrix.tocsc()
    rows, cols = a.shape
    if rows != cols:
        raise DimensionMismatchError(rows, cols, "matrix columns")
    if rows == 0:
        raise SingularMatrixError(0, "empty matrix")

    try:
        lu = splu(a, permc_spec=PERMC_SPEC)
    except RuntimeError as e:
        pivot = _first_bad_pivot(a.toarray())
        raise SingularMatrixError(pivot, str(e)) from e

    u_diagonal = np.abs(lu.U.diagonal())
    scale = max(float(np.max(np.abs(a.data), initial=0.0)), 1.0)
    if not np.all(np.isfinite(u_diagonal)) or np.min(u_diagonal) <= PIVOT_RTOL * scale:
        pivot = int(np.argmin(u_diagonal))
        raise SingularMatrixError(pivot, "pivot below numerical threshold")

    logger.debug("Factored %dx%d %s matrix (nnz=%d)", rows, cols, a.dtype, a.nnz)
    return Factorization(lu, rows, a.dtype)


def solve(f: Factorization, rhs: ndarray) -> ndarray:
    """
    Solves A·x = rhs with a previously computed factorization.

    Args:
        f (Factorization): Result of :func:`factor`.
        rhs (ndarray): Right-hand side of length ``f.dimension``.
    Returns:
        ndarray: The solution, complex when either operand is complex.
    Raises:
        DimensionMismatchError: If ``rhs`` has the wrong length.
    """
    rhs = np.asarray(rhs)
    if rhs.shape != (f.dimension,):
        raise DimensionMismatchError(f.dimension, rhs.size)

    f.solve_count += 1
    if np.iscomplexobj(rhs) and not np.iscomplexobj(np.empty(0, dtype=f.dtype)):
        return f._lu.solve(np.ascontiguousarray(rhs.real)) + 1j * f._lu.solve(
            np.ascontiguousarray(rhs.imag)
        )
    return f._lu.solve(np.ascontiguousarray(rhs, dtype=np.result_type(rhs, f.dtype)))
