"""
Wynn epsilon evaluation of near-diagonal Padé approximants.

Partial sums of the series at the evaluation point seed column 0 of the
epsilon table; even columns hold Padé values and the top entry of column 2k
is the diagonal [k/k] approximant.
"""

from logging import getLogger
from typing import Optional, Tuple

import numpy as np
from numpy import ndarray

from helmflow.exceptions import DegeneratePadeTableError
from helmflow.pade.rational import evaluate_rational
from helmflow.pade.result import PadeResult, PadeStatus
from helmflow.settings.pade import PadeSettings
from helmflow.utilities.validators import validate_coefficients, validate_tolerance

logger = getLogger(__name__)


def partial_sums(coeffs, s: complex) -> ndarray:
    """
    Direct summation S_n = Σ_{m<=n} c_m s^m for every n.

    Args:
        coeffs: Series coefficients c_0..c_N.
        s (complex): Evaluation point.
    Returns:
        ndarray: Complex partial sums, same length as ``coeffs``.
    """
    c = validate_coefficients(coeffs)
    powers = np.power(complex(s), np.arange(len(c)))
    return np.cumsum(c * powers)


def _epsilon_diagonal(sums: ndarray, threshold: float) -> Tuple[ndarray, ndarray, int]:
    """
    Runs the epsilon recursion and collects the top entry of every even column.

    An entry whose denominator falls below ``threshold``, or whose north or
    south neighbor was itself inherited, takes the value of its west neighbor.
    Returns the diagonal, a mask of diagonal entries that depend on an inherited
    entry, and the breakdown count.
    """
    west = np.zeros(len(sums), dtype=complex)
    column = sums.astype(complex)
    inherited = np.zeros(len(sums), dtype=bool)
    west_tainted = np.zeros(len(sums), dtype=bool)
    tainted = np.zeros(len(sums), dtype=bool)
    diagonal = [column[0]]
    diagonal_tainted = [False]
    breakdowns = 0

    for k in range(1, len(sums)):
        diff = column[1:] - column[:-1]
        tiny = ~(np.abs(diff) >= threshold)
        blocked = tiny | inherited[1:] | inherited[:-1]
        breakdowns += int(np.count_nonzero(tiny & ~inherited[1:] & ~inherited[:-1]))

        west_values = west[1 : len(column)]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            step = west_values + 1.0 / np.where(blocked, 1.0, diff)
        overflow = ~np.isfinite(step)
        blocked |= overflow
        next_column = np.where(blocked, west_values, step)
        next_tainted = blocked | tainted[1:] | tainted[:-1] | west_tainted[1 : len(column)]

        west, column, inherited = column, next_column, blocked
        west_tainted, tainted = tainted, next_tainted
        if k % 2 == 0:
            diagonal.append(column[0])
            diagonal_tainted.append(bool(tainted[0]))

    return (
        np.asarray(diagonal, dtype=complex),
        np.asarray(diagonal_tainted, dtype=bool),
        breakdowns,
    )


def _bridge(values: ndarray, tainted: ndarray, coeffs: ndarray, s: complex) -> ndarray:
    """
    Replaces diagonal entries built on inherited table entries by the explicit
    [k/k] value; a degenerate [k/k] repeats the previous diagonal value.
    """
    values = values.copy()
    for k in np.flatnonzero(tainted):
        try:
            values[k] = evaluate_rational(coeffs, k, k, s)
        except DegeneratePadeTableError:
            values[k] = values[k - 1]
    return values


def diagonal_values(
    coeffs, s: complex, settings: Optional[PadeSettings] = None
) -> Tuple[ndarray, int]:
    """
    Diagonal Padé values [k/k](s) for every k the coefficients allow.

    Args:
        coeffs: Series coefficients c_0..c_N.
        s (complex): Evaluation point.
        settings (Optional[PadeSettings]): Breakdown threshold.
    Returns:
        Tuple[ndarray, int]: Values indexed by k, and the number of table breakdowns.
    """
    settings = settings or PadeSettings()
    c = validate_coefficients(coeffs)
    values, tainted, breakdowns = _epsilon_diagonal(
        partial_sums(c, s), settings.breakdown_threshold
    )
    if breakdowns:
        logger.debug("Epsilon table at s=%s: %d breakdowns", s, breakdowns)
        values = _bridge(values, tainted, c, s)
    return values, breakdowns


def is_stable(values: ndarray, tol: float, stable_steps: int) -> bool:
    """
    True when the last ``stable_steps`` steps of ``values`` agree pairwise within
    ``tol`` relative to max(1, |values[-1]|).
    """
    window = stable_steps + 1
    if len(values) < window:
        return False
    block = np.asarray(values[-window:])
    scale = max(1.0, float(abs(block[-1])))
    spread = np.max(np.abs(block[:, None] - block[None, :]))
    return bool(spread < tol * scale)


def _zero_result() -> PadeResult:
    return PadeResult(
        values=np.zeros(1, dtype=complex),
        status=PadeStatus.CONVERGED,
        final_value=0j,
        converged_at=0,
    )


def eval_near_diagonal(
    coeffs, s: complex, tol: float, settings: Optional[PadeSettings] = None
) -> PadeResult:
    """
    Evaluates the near-diagonal Padé sequence of a power series at ``s``.

    Converged means the trailing window of the diagonal sequence agrees.

    Args:
        coeffs: Series coefficients c_0..c_N, at least three.
        s (complex): Evaluation point.
        tol (float): Relative tolerance of the stopping rule.
        settings (Optional[PadeSettings]): Breakdown threshold and window length.
    Returns:
        PadeResult: Converged with the last diagonal value when the trailing
            window agrees, NotConverged with the last diagonal value otherwise.
    Raises:
        SeriesDataError: On fewer than three coefficients or a non-positive tolerance.
    """
    settings = settings or PadeSettings()
    c = validate_coefficients(coeffs, minimum=3)
    tol = validate_tolerance(tol)
    if not np.any(c):
        return _zero_result()

    values, breakdowns = diagonal_values(c, s, settings)
    converged = is_stable(values, tol, settings.stable_steps)
    return PadeResult(
        values=values,
        status=PadeStatus.CONVERGED if converged else PadeStatus.NOT_CONVERGED,
        final_value=complex(values[-1]),
        converged_at=len(values) - 1 if converged else None,
        breakdowns=breakdowns,
    )


def eval_first_stable(
    coeffs,
    s: complex,
    tol: float,
    settings: Optional[PadeSettings] = None,
    start: int = 0,
) -> PadeResult:
    """
    Evaluates the series as if it were extended one diagonal at a time, stopping
    at the first truncation whose trailing window agrees.

    A converged result covers the diagonal up to the firing index only, so it is
    what :func:`eval_near_diagonal` returns on the matching coefficient prefix.

    Args:
        coeffs: Series coefficients c_0..c_N, at least three.
        s (complex): Evaluation point.
        tol (float): Relative tolerance of the stopping rule.
        settings (Optional[PadeSettings]): Breakdown threshold and window length.
        start (int): Lowest diagonal index at which the rule may fire.
    Returns:
        PadeResult: Converged at the first firing index, NotConverged over the
            full diagonal otherwise.
    """
    settings = settings or PadeSettings()
    c = validate_coefficients(coeffs, minimum=3)
    tol = validate_tolerance(tol)
    if not np.any(c):
        return _zero_result()

    values, breakdowns = diagonal_values(c, s, settings)
    for k in range(max(start, settings.stable_steps), len(values)):
        if is_stable(values[: k + 1], tol, settings.stable_steps):
            return PadeResult(
                values=values[: k + 1],
                status=PadeStatus.CONVERGED,
                final_value=complex(values[k]),
                converged_at=k,
                breakdowns=breakdowns,
            )
    return PadeResult(
        values=values,
        status=PadeStatus.NOT_CONVERGED,
        final_value=complex(values[-1]),
        breakdowns=breakdowns,
    )
