from helmflow.pade.epsilon import (
    diagonal_values,
    eval_first_stable,
    eval_near_diagonal,
    is_stable,
    partial_sums,
)
from helmflow.pade.rational import (
    estimate_branch_points,
    estimate_convergence_radius,
    estimate_dominant_singularity,
    evaluate_rational,
    rational_coefficients,
)
from helmflow.pade.result import PadeResult, PadeStatus


__all__ = [
    "PadeResult",
    "PadeStatus",
    "diagonal_values",
    "estimate_branch_points",
    "estimate_convergence_radius",
    "estimate_dominant_singularity",
    "eval_first_stable",
    "eval_near_diagonal",
    "evaluate_rational",
    "is_stable",
    "partial_sums",
    "rational_coefficients",
]
