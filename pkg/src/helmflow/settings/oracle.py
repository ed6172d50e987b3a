from pydantic import BaseModel, Field


class OracleSettings(BaseModel):
    """
    Settings of the Newton-Raphson cross-validation oracle.

    Attributes:
        tolerance (float): Maximum absolute power mismatch at convergence.
        max_iterations (int): Iterations before NR reports non-convergence.
    """

    model_config = {"extra": "forbid"}

    tolerance: float = Field(
        default=1e-10,
        gt=0,
        description="Maximum absolute power mismatch at convergence.",
    )
    max_iterations: int = Field(
        default=50,
        ge=1,
        description="Iterations before NR reports non-convergence.",
    )
