from pydantic import BaseModel, Field


class PadeSettings(BaseModel):
    """
    Settings of the epsilon-table Padé evaluation.

    Attributes:
        breakdown_threshold (float): Differences below this magnitude are treated as table breakdown.
        stable_steps (int): Consecutive diagonal steps that must fall below tolerance.
    """

    model_config = {"extra": "forbid"}

    breakdown_threshold: float = Field(
        default=1e-290,
        gt=0,
        description="Differences below this magnitude are treated as table breakdown.",
    )
    stable_steps: int = Field(
        default=3,
        ge=1,
        description="Consecutive diagonal steps that must fall below tolerance.",
    )
