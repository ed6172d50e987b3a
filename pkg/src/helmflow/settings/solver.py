from enum import StrEnum

from pydantic import BaseModel, Field


class EmbeddingKind(StrEnum):
    """
    Holomorphic embeddings offered by the series construction.

    Attributes:
        MINIMAL (str): Full admittance on the left, only constant-power terms scaled by s.
        CANONICAL (str): Transmission admittance on the left, shunts and constant power scaled by s.
    """

    MINIMAL = "minimal"
    CANONICAL = "canonical"


class SolverSettings(BaseModel):
    """
    Options of a single HELM solve.

    Attributes:
        embedding (EmbeddingKind): Which embedding generates the germ.
        max_order (int): Highest series order computed before giving up.
        pade_tol (float): Relative tolerance of the Padé stopping rule.
        mismatch_tol (float): Maximum power mismatch accepted for a converged solve.
        order_step (int): Orders added between consecutive Padé checks.
        pole_order (int): Denominator degree M of the [M/M] approximant used for pole diagnostics.
        pole_imag_tol (float): Largest imaginary part of a pole still counted as lying on the real axis.
        pole_persistence_rtol (float): Relative distance within which a real pole must recur one denominator step (M - 2) lower.
        collect_poles (bool): Whether pole estimates are computed for every bus.
    """

    model_config = {"extra": "forbid"}

    embedding: EmbeddingKind = Field(
        default=EmbeddingKind.CANONICAL,
        description="Which embedding generates the germ.",
    )
    max_order: int = Field(
        default=60,
        ge=5,
        description="Highest series order computed before giving up.",
    )
    pade_tol: float = Field(
        default=1e-10,
        gt=0,
        description="Relative tolerance of the Padé stopping rule.",
    )
    mismatch_tol: float = Field(
        default=1e-8,
        gt=0,
        description="Maximum power mismatch accepted for a converged solve.",
    )
    order_step: int = Field(
        default=5,
        ge=1,
        description="Orders added between consecutive Padé checks.",
    )
    pole_order: int = Field(
        default=20,
        ge=1,
        description="Denominator degree M of the [M/M] approximant used for pole diagnostics.",
    )
    pole_imag_tol: float = Field(
        default=1e-2,
        gt=0,
        description="Largest imaginary part of a pole still counted as lying on the real axis.",
    )
    pole_persistence_rtol: float = Field(
        default=2e-2,
        gt=0,
        description="Relative distance within which a real pole must recur one denominator step (M - 2) lower.",
    )
    collect_poles: bool = Field(
        default=True,
        description="Whether pole estimates are computed for every bus.",
    )


SolveOptions = SolverSettings
