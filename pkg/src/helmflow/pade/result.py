from dataclasses import dataclass, field
from enum import StrEnum
from typing import List, Optional

from numpy import ndarray


class PadeStatus(StrEnum):
    """
    Outcome of the near-diagonal stopping rule.

    Attributes:
        CONVERGED (str): Consecutive diagonal values agreed within tolerance.
        NOT_CONVERGED (str): The rule never fired on the available coefficients.
    """

    CONVERGED = "converged"
    NOT_CONVERGED = "not_converged"


@dataclass
class PadeResult:
    """
    Near-diagonal Padé evaluation of one series at one point.

    Attributes:
        values (ndarray): Diagonal values; entry k is the [k/k] approximant, built from 2k+1 coefficients.
        status (PadeStatus): Whether the stopping rule fired.
        final_value (complex): Value at the firing index, else the last diagonal value.
        converged_at (Optional[int]): Diagonal index where the rule fired.
        breakdowns (int): Epsilon-table entries that inherited their west neighbor.
        pole_estimates (Optional[List[complex]]): Denominator roots, filled in by callers that ask for them.
    """

    values: ndarray
    status: PadeStatus
    final_value: complex
    converged_at: Optional[int] = None
    breakdowns: int = 0
    pole_estimates: Optional[List[complex]] = field(default=None)

    @property
    def converged(self) -> bool:
        return self.status == PadeStatus.CONVERGED
