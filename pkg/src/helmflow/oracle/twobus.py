"""
Closed-form two-bus solutions of the embedded power-flow equations.

For a swing bus V0 feeding one PQ bus through Z, the dimensionless unknown
U = V/V0 satisfies conj(U)·(U - 1) = s·σ with σ = Z·S*/|V0|². Eliminating the
mirrored variable gives U² - (1 + 2jsσ_I)U - sσ* = 0, whose two roots are
U± = 1/2 ± √Δ(s) + jsσ_I with Δ(s) = 1/4 + sσ_R - s²σ_I². The Plus root is
the operational (white) branch.
"""

from dataclasses import dataclass
from enum import StrEnum
from typing import Tuple, Union

import numpy as np

from helmflow.exceptions import OracleError
from helmflow.network.model import BranchSpec, BusKind, BusSpec, Network

DISCRIMINANT_ATOL = 1e-13


class Branch(StrEnum):
    """
    Roots of the two-bus elimination polynomial.

    Attributes:
        PLUS (str): Operational branch, U(0) = 1.
        MINUS (str): Non-operational branch, U(0) = 0.
    """

    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class NoSolution:
    """
    The requested branch does not satisfy the reflection condition at ``s``.
    """

    s: float
    reason: str


@dataclass(frozen=True)
class TwoBusCase:
    """
    Dimensionless two-bus load σ = Z·S*/|V0|².
    """

    sigma: complex

    @property
    def sigma_r(self) -> float:
        return float(np.real(self.sigma))

    @property
    def sigma_i(self) -> float:
        return float(np.imag(self.sigma))


def _sign(branch: Branch) -> float:
    return 1.0 if Branch(branch) == Branch.PLUS else -1.0


def twobus_discriminant(case: TwoBusCase, s: float) -> float:
    """Δ(s) = 1/4 + sσ_R - s²σ_I²."""
    return 0.25 + s * case.sigma_r - s**2 * case.sigma_i**2


def twobus_closed_form(
    case: TwoBusCase, s: float, branch: Branch = Branch.PLUS
) -> Union[complex, NoSolution]:
    """
    Exact U(s) on the requested branch for real ``s``.

    Args:
        case (TwoBusCase): The load.
        s (float): Embedding parameter.
        branch (Branch): Plus (operational) or Minus.
    Returns:
        Union[complex, NoSolution]: U(s), or NoSolution when Δ(s) < 0.
    """
    delta = twobus_discriminant(case, s)
    if delta < 0:
        if delta < -DISCRIMINANT_ATOL:
            return NoSolution(s, f"negative discriminant {delta:.6g}")
        delta = 0.0
    return 0.5 + _sign(branch) * np.sqrt(delta) + 1j * s * case.sigma_i


def twobus_hat_branch(case: TwoBusCase, s: float, u: complex) -> complex:
    """Mirrored variable Û = U - 2jsσ_I on the same branch."""
    return u - 2j * s * case.sigma_i


def twobus_curve_residual(case: TwoBusCase, s: float, u: complex) -> complex:
    """U² - (1 + 2jsσ_I)U - sσ*, zero on both branches."""
    return u * u - (1 + 2j * s * case.sigma_i) * u - s * np.conj(case.sigma)


def twobus_branch_points(case: TwoBusCase) -> Tuple[float, float]:
    """
    Real roots (s_minus, s_plus) of Δ(s).

    For σ_I = 0 the discriminant is linear with the single root -1/(4σ_R),
    reported as ``s_plus`` when positive and ``s_minus`` otherwise; the missing
    root is an infinity of matching sign. For σ = 0 both are infinite.
    """
    sigma_r, sigma_i = case.sigma_r, case.sigma_i
    if sigma_i == 0:
        if sigma_r == 0:
            return -np.inf, np.inf
        root = -1.0 / (4.0 * sigma_r)
        return (-np.inf, float(root)) if root > 0 else (float(root), np.inf)
    modulus = abs(case.sigma)
    denominator = 2.0 * sigma_i**2
    s_minus = (sigma_r - modulus) / denominator
    s_plus = (sigma_r + modulus) / denominator
    return float(s_minus), float(s_plus)


def twobus_convergence_radius(case: TwoBusCase) -> float:
    """Distance from s = 0 to the nearer branch point, the radius of the U(s) series."""
    s_minus, s_plus = twobus_branch_points(case)
    return float(min(abs(s_minus), abs(s_plus)))


def twobus_pade_rate(case: TwoBusCase, s: float = 1.0) -> float:
    """
    Geometric rate g of diagonal Padé convergence at a real ``s`` > 0; the [k/k]
    error decays like exp(-2kg).

    Under z = 1/s the cut (-inf, s_minus] U [s_plus, inf) becomes the segment
    [a, b] with a = -2(σ_R + |σ|) and b = 2(|σ| - σ_R). g is the Green's function
    of the segment's complement with its pole at infinity, evaluated at z = 1/s,
    and is zero on the cut.
    """
    modulus = abs(case.sigma)
    a = -2.0 * (case.sigma_r + modulus)
    b = 2.0 * (modulus - case.sigma_r)
    if b == a:
        return float("inf")
    w = abs((2.0 / s - a - b) / (b - a))
    return float(np.arccosh(w)) if w > 1.0 else 0.0


def twobus_is_feasible(case: TwoBusCase, s: float = 1.0) -> bool:
    """True when the operational branch reaches ``s`` without a collision, s₋ <= s <= s₊."""
    s_minus, s_plus = twobus_branch_points(case)
    return bool(s_minus <= s <= s_plus)


def twobus_pv_closed_form(
    x: float, p: float, vsp: float, s: float, branch: Branch = Branch.PLUS
) -> Union[Tuple[complex, float], NoSolution]:
    """
    Exact lossless PV two-bus solution.

    U = jxsP ± √(K(s) - x²s²P²) with K(s) = 1 + s(vsp² - 1), and Q recovered from
    sxQ + U - jsxP - K(s) = 0. At s = 1, Q is the reactive injection of the PV bus.

    Args:
        x (float): Line reactance, positive.
        p (float): Active injection of the PV bus.
        vsp (float): Voltage magnitude setpoint.
        s (float): Embedding parameter, positive.
        branch (Branch): Plus (operational) or Minus.
    Returns:
        Union[Tuple[complex, float], NoSolution]: (U, Q), or NoSolution when the
            radicand is negative.
    Raises:
        OracleError: If ``s·x`` is not positive.
    """
    if not (x > 0 and s > 0):
        raise OracleError("twobus_pv", f"s and x must be positive, got s={s}, x={x}")

    k = 1.0 + s * (vsp**2 - 1.0)
    radicand = k - (x * s * p) ** 2
    if radicand < 0:
        if radicand < -DISCRIMINANT_ATOL:
            return NoSolution(s, f"negative radicand {radicand:.6g}")
        radicand = 0.0

    u = 1j * x * s * p + _sign(branch) * np.sqrt(radicand)
    q = float(np.real((k - u + 1j * x * s * p) / (s * x)))
    return complex(u), q


def twobus_network(
    sigma: complex, z: complex = 1.0 + 0.0j, v0: complex = 1.0 + 0.0j
) -> Network:
    """
    Swing + PQ network realizing a given σ: S = conj(σ·|V0|²/Z).

    The PQ bus voltage of its solution is V0·U.
    """
    if z == 0:
        raise OracleError("twobus_network", "line impedance must be non-zero")
    s = np.conj(sigma * abs(v0) ** 2 / z)
    return Network(
        [
            BusSpec(id=1, kind=BusKind.SWING, vswing=complex(v0)),
            BusSpec(id=2, kind=BusKind.PQ, p=float(s.real), q=float(s.imag)),
        ],
        [BranchSpec(from_bus=1, to_bus=2, r=float(np.real(z)), x=float(np.imag(z)))],
    )


def twobus_pv_network(x: float, p: float, vsp: float) -> Network:
    """Swing (V = 1) feeding a PV bus through a lossless line jx."""
    return Network(
        [
            BusSpec(id=1, kind=BusKind.SWING),
            BusSpec(id=2, kind=BusKind.PV, p=p, vsp=vsp),
        ],
        [BranchSpec(from_bus=1, to_bus=2, x=x)],
    )
