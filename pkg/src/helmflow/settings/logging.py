from enum import StrEnum

from pydantic import BaseModel, Field


class LogLevel(StrEnum):
    """
    Enumeration of standard logging levels.
    """

    CRITICAL = "CRITICAL"
    ERROR = "ERROR"
    WARNING = "WARNING"
    INFO = "INFO"
    DEBUG = "DEBUG"


class LoggingSettings(BaseModel):
    """
    Settings related to logging configuration.

    Attributes:
        log_level (LogLevel): The level of the ``helmflow`` logger tree.
        silence_external_loggers (bool): Whether to raise numeric library loggers to WARNING.
        log_format (str): Format string of the stderr handler attached by ``configure_logging``.
    """

    model_config = {"extra": "forbid"}

    log_level: LogLevel = Field(
        default=LogLevel.WARNING,
        description="The level of the helmflow logger tree.",
    )
    silence_external_loggers: bool = Field(
        default=True,
        description="Whether to silence loggers from numpy, scipy and pydantic.",
    )
    log_format: str = Field(
        default="%(asctime)s %(levelname)s %(name)s: %(message)s",
        description="Format string of the stderr handler.",
    )
