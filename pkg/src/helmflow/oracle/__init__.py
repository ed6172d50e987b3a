from helmflow.oracle.newton import NewtonSolution, NonConvergence, newton_raphson
from helmflow.oracle.twobus import (
    Branch,
    NoSolution,
    TwoBusCase,
    twobus_branch_points,
    twobus_closed_form,
    twobus_convergence_radius,
    twobus_curve_residual,
    twobus_discriminant,
    twobus_hat_branch,
    twobus_is_feasible,
    twobus_network,
    twobus_pade_rate,
    twobus_pv_closed_form,
    twobus_pv_network,
)


__all__ = [
    "Branch",
    "NewtonSolution",
    "NoSolution",
    "NonConvergence",
    "TwoBusCase",
    "newton_raphson",
    "twobus_branch_points",
    "twobus_closed_form",
    "twobus_convergence_radius",
    "twobus_curve_residual",
    "twobus_discriminant",
    "twobus_hat_branch",
    "twobus_is_feasible",
    "twobus_network",
    "twobus_pade_rate",
    "twobus_pv_closed_form",
    "twobus_pv_network",
]
