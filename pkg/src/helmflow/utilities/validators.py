from typing import Sequence

import numpy as np
from numpy import ndarray

from helmflow.exceptions import SeriesDataError


def validate_coefficients(coeffs, minimum: int = 1) -> ndarray:
    """
    Validates a one-dimensional coefficient sequence and returns it as complex.

    Args:
        coeffs: Power-series coefficients c_0, c_1, ...
        minimum (int): Fewest coefficients accepted.
    Returns:
        ndarray: The coefficients as a complex array.
    Raises:
        SeriesDataError: If the data is not 1-D, too short or not finite.
    """
    array = np.asarray(coeffs, dtype=complex)
    if array.ndim != 1:
        raise SeriesDataError(f"expected a 1-D coefficient sequence, got {array.ndim}-D")
    if len(array) < minimum:
        raise SeriesDataError(
            f"at least {minimum} coefficients required, got {len(array)}"
        )
    if not np.all(np.isfinite(array)):
        raise SeriesDataError("coefficients must be finite")
    return array


def validate_tolerance(tol: float) -> float:
    if not tol > 0:
        raise SeriesDataError(f"tolerance must be positive, got {tol}")
    return float(tol)


def validate_scan_grid(s_values: Sequence[float]) -> list[float]:
    """
    Validates the evaluation points of an s-axis scan.

    Raises:
        SeriesDataError: If the grid is empty, unsorted, or leaves (0, 1].
    """
    grid = [float(s) for s in s_values]
    if not grid:
        raise SeriesDataError("scan grid is empty")
    if any(not 0.0 < s <= 1.0 for s in grid):
        raise SeriesDataError("scan points must lie in (0, 1]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise SeriesDataError("scan points must be strictly ascending")
    return grid
