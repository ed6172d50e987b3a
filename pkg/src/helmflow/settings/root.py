from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from helmflow.settings.logging import LoggingSettings
from helmflow.settings.oracle import OracleSettings
from helmflow.settings.pade import PadeSettings
from helmflow.settings.solver import SolverSettings


class Settings(BaseSettings):
    """
    Root settings of the helmflow library.

    Values come from the defaults below, overridden by ``HELMFLOW_``-prefixed
    environment variables (``HELMFLOW_SOLVER__MAX_ORDER=80``) and env files.

    Attributes:
        solver (SolverSettings): Options of a HELM solve.
        pade (PadeSettings): Epsilon-table evaluation settings.
        oracle (OracleSettings): Newton-Raphson oracle settings.
        logging (LoggingSettings): Settings related to logging configuration.
    """

    solver: SolverSettings = Field(default_factory=SolverSettings)
    pade: PadeSettings = Field(default_factory=PadeSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    model_config = SettingsConfigDict(
        env_prefix="HELMFLOW_",
        env_nested_delimiter="__",
        env_file=(
            ".env.helmflow",
            ".env.defaults",
            ".env",
        ),
        env_file_encoding="utf-8",
        extra="ignore",
        validate_assignment=True,
        case_sensitive=False,
    )
