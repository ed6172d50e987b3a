"""
Explicit [L/M] Padé construction and the diagnostics built on it.
"""

from logging import getLogger
from typing import List, Optional, Tuple

import numpy as np
from numpy import ndarray
from numpy.polynomial import polynomial
from scipy.linalg import lstsq, toeplitz

from helmflow.exceptions import DegeneratePadeTableError, SeriesDataError
from helmflow.utilities.validators import validate_coefficients

logger = getLogger(__name__)

TRIM_RTOL = 1e-14
CONSISTENCY_RTOL = 1e-8
DOUBLET_RTOL = 1e-3
RATIO_IMAG_RTOL = 1e-6
RATIO_FIT_RTOL = 1e-3
REFINE_RTOL = 5e-2
MIN_RATIO_TERMS = 6


def _trim(poly: ndarray, scale: float) -> ndarray:
    nonzero = np.flatnonzero(np.abs(poly) > TRIM_RTOL * scale)
    if not nonzero.size:
        return poly[:1]
    return poly[: nonzero[-1] + 1]


def rational_coefficients(coeffs, L: int, M: int) -> Tuple[ndarray, ndarray]:
    """
    Numerator and denominator of the [L/M] Padé approximant, lowest order first.

    The denominator is normalized to b_0 = 1 and solves the M accuracy-through-order
    conditions Σ_j b_j c_{L+i-j} = 0 (i = 1..M), a Toeplitz system. Rank-deficient
    but consistent systems take the minimum-norm solution, so an approximant that
    reduces to lower degrees is returned in lowest terms. Trailing zero
    coefficients are trimmed from both polynomials.

    Args:
        coeffs: Series coefficients, at least L + M + 1.
        L (int): Numerator degree.
        M (int): Denominator degree.
    Returns:
        Tuple[ndarray, ndarray]: (numerator, denominator).
    Raises:
        SeriesDataError: If degrees are negative or coefficients are too few.
        DegeneratePadeTableError: If the Toeplitz conditions admit no solution.
    """
    if L < 0 or M < 0:
        raise SeriesDataError(f"degrees must be non-negative, got [{L}/{M}]")
    c = validate_coefficients(coeffs, minimum=L + M + 1)[: L + M + 1]
    scale = max(float(np.max(np.abs(c))), np.finfo(float).tiny)

    b = np.ones(1, dtype=complex)
    if M > 0:
        padded = np.concatenate([np.zeros(M, dtype=complex), c])
        # padded[M + n] == c_n, with c_n = 0 for n < 0
        column = padded[M + L : M + L + M]
        row = padded[M + L - np.arange(M)]
        matrix = toeplitz(column, row)
        rhs = -c[L + 1 : L + M + 1]

        solution, _, rank, _ = lstsq(matrix, rhs)
        residual = np.linalg.norm(matrix @ solution - rhs)
        if rank < M and residual > CONSISTENCY_RTOL * max(np.linalg.norm(rhs), scale):
            raise DegeneratePadeTableError(L, M)
        b = np.concatenate([b, solution])

    a = np.array(
        [np.sum(b[: min(i, M) + 1] * c[i - np.arange(min(i, M) + 1)]) for i in range(L + 1)]
    )
    return _trim(a, scale), _trim(b, 1.0)


def estimate_convergence_radius(coeffs) -> float:
    """
    Root-test estimate 1/max|c_n|^{1/n} over the upper half of the coefficients.

    Returns ``inf`` when that tail vanishes.
    """
    c = validate_coefficients(coeffs, minimum=2)
    n = np.arange(len(c))
    tail = n >= max(1, len(c) // 2)
    magnitudes = np.abs(c[tail])
    orders = n[tail]
    nonzero = magnitudes > 0
    if not np.any(nonzero):
        return float("inf")
    roots = magnitudes[nonzero] ** (1.0 / orders[nonzero])
    return float(1.0 / np.max(roots))


def _rescaled(c: ndarray) -> Tuple[ndarray, float]:
    """Coefficients of f(r·t), with r the root-test radius, and r itself."""
    radius = estimate_convergence_radius(c) if len(c) > 1 else 1.0
    if not np.isfinite(radius) or radius <= 0:
        radius = 1.0
    return c * radius ** np.arange(len(c)), radius


def evaluate_rational(coeffs, L: int, M: int, s: complex) -> complex:
    """
    Value of the [L/M] approximant at ``s``, built on radius-rescaled coefficients.

    Raises:
        DegeneratePadeTableError: If the Toeplitz conditions admit no solution or
            the denominator vanishes at ``s``.
    """
    c = validate_coefficients(coeffs, minimum=L + M + 1)[: L + M + 1]
    scaled, radius = _rescaled(c)
    numerator, denominator = rational_coefficients(scaled, L, M)
    t = complex(s) / radius
    den = polynomial.polyval(t, denominator)
    value = polynomial.polyval(t, numerator) / den if den != 0 else np.nan
    if not np.isfinite(value):
        raise DegeneratePadeTableError(L, M)
    return complex(value)


def estimate_dominant_singularity(coeffs) -> Optional[float]:
    """
    Ratio-method estimate of a real singularity that dominates the coefficients.

    For f ~ (1 - s/s0)^α the ratios c_n/c_{n-1} approach (1/s0)(1 - (1+α)/n);
    a quadratic fit in 1/n over the upper half of the coefficients gives 1/s0 as
    its intercept. Returns None when the ratios are not real, not smooth in 1/n,
    or too few.
    """
    c = validate_coefficients(coeffs, minimum=2)
    orders = np.arange(max(2, len(c) // 2), len(c))
    if len(orders) < MIN_RATIO_TERMS:
        return None
    previous = c[orders - 1]
    if np.any(previous == 0):
        return None
    ratios = c[orders] / previous
    largest = float(np.max(np.abs(ratios)))
    if not np.isfinite(largest) or largest == 0:
        return None
    if np.max(np.abs(ratios.imag)) > RATIO_IMAG_RTOL * largest:
        return None

    x = 1.0 / orders
    design = np.column_stack([np.ones_like(x), x, x**2])
    fit, *_ = lstsq(design, ratios.real)
    intercept = float(fit[0])
    misfit = float(np.max(np.abs(design @ fit - ratios.real)))
    if intercept == 0 or misfit > RATIO_FIT_RTOL * abs(intercept):
        return None
    return 1.0 / intercept


def _drop_doublets(poles: ndarray, zeros: ndarray) -> ndarray:
    """Poles with no numerator zero within DOUBLET_RTOL·max(1, |pole|)."""
    if not zeros.size:
        return poles
    distance = np.min(np.abs(poles[:, None] - zeros[None, :]), axis=1)
    return poles[distance > DOUBLET_RTOL * np.maximum(1.0, np.abs(poles))]


def estimate_branch_points(coeffs, M: int) -> List[complex]:
    """
    Roots of the [M/M] denominator, nearest first.

    Coefficients are rescaled by r^n with r the root-test radius before the
    Toeplitz solve, and the roots mapped back. Roots cancelled by a numerator
    zero within DOUBLET_RTOL are dropped. When the coefficients are dominated by
    a real singularity, the root closest to the ratio-method estimate of it is
    replaced by that estimate.

    Args:
        coeffs: Series coefficients, at least 2M + 1.
        M (int): Denominator degree.
    Returns:
        List[complex]: Pole estimates sorted by modulus.
    Raises:
        DegeneratePadeTableError: Propagated from :func:`rational_coefficients`.
    """
    c = validate_coefficients(coeffs, minimum=2 * M + 1)[: 2 * M + 1]
    scaled, radius = _rescaled(c)
    numerator, denominator = rational_coefficients(scaled, M, M)
    if len(denominator) < 2:
        return []

    poles = np.roots(denominator[::-1])
    poles = poles[np.isfinite(poles)]
    zeros = np.roots(numerator[::-1]) if len(numerator) > 1 else np.empty(0)
    kept = _drop_doublets(poles, zeros[np.isfinite(zeros)]) * radius
    if len(kept) < len(poles):
        logger.debug("Dropped %d pole-zero doublets", len(poles) - len(kept))

    roots = [complex(r) for r in kept]
    singularity = estimate_dominant_singularity(c)
    if singularity is not None and roots:
        closest = min(range(len(roots)), key=lambda i: abs(roots[i] - singularity))
        if abs(roots[closest] - singularity) <= REFINE_RTOL * abs(singularity):
            roots[closest] = complex(singularity)

    logger.debug("Estimated %d poles from [%d/%d] denominator", len(roots), M, M)
    return sorted(roots, key=abs)
