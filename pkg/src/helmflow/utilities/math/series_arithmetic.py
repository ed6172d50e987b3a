import numpy as np
from numpy import ndarray


def cauchy_term(a: ndarray, b: ndarray, order: int, start: int = 0, stop: int = None) -> ndarray:
    """
    Partial Cauchy-product coefficient Σ_{m=start..stop} a[m]·b[order-m].

    Works column-wise on coefficient matrices shaped (orders, series).

    Args:
        a (ndarray): Left coefficients, indexed by order along axis 0.
        b (ndarray): Right coefficients, same layout.
        order (int): Target order of the product.
        start (int): First index of ``a`` taken into the sum.
        stop (int): Last index of ``a`` taken into the sum; ``order`` when omitted.
    Returns:
        ndarray: The partial coefficient for every column.
    """
    stop = order if stop is None else stop
    if stop < start:
        return np.zeros(a.shape[1:], dtype=np.result_type(a, b))
    m = np.arange(start, stop + 1)
    return np.sum(a[m] * b[order - m], axis=0)


def reciprocal_term(c: ndarray, w: ndarray, order: int) -> ndarray:
    """
    Next coefficient of w = 1/c given w[0..order-1]: w[N] = -w[0]·Σ_{m=1..N} c[m]·w[N-m].

    Args:
        c (ndarray): Coefficients of the series being inverted, through ``order``.
        w (ndarray): Already known reciprocal coefficients, through ``order - 1``.
        order (int): Order N >= 1 to compute.
    Returns:
        ndarray: w[N] for every column.
    """
    return -w[0] * cauchy_term(c, w, order, start=1)


def reciprocal_series(c: ndarray, order: int) -> ndarray:
    """
    Coefficients of 1/c(s) through ``order``; ``c[0]`` must be non-zero.
    """
    c = np.asarray(c, dtype=complex)
    squeeze = c.ndim == 1
    if squeeze:
        c = c[:, None]
    padded = np.zeros((order + 1,) + c.shape[1:], dtype=complex)
    padded[: min(len(c), order + 1)] = c[: order + 1]
    w = np.zeros_like(padded)
    w[0] = 1.0 / padded[0]
    for n in range(1, order + 1):
        w[n] = reciprocal_term(padded, w, n)
    return w[:, 0] if squeeze else w


def evaluate_series(coeffs: ndarray, s: complex) -> ndarray:
    """
    Horner evaluation of Σ_n coeffs[n]·s^n along axis 0.
    """
    coeffs = np.asarray(coeffs)
    result = np.zeros(coeffs.shape[1:], dtype=np.result_type(coeffs, complex))
    for c in coeffs[::-1]:
        result = result * s + c
    return result
