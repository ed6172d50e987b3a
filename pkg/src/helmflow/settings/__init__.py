from helmflow.settings.logging import LoggingSettings, LogLevel
from helmflow.settings.oracle import OracleSettings
from helmflow.settings.pade import PadeSettings
from helmflow.settings.root import Settings
from helmflow.settings.solver import EmbeddingKind, SolveOptions, SolverSettings


__all__ = [
    "EmbeddingKind",
    "LogLevel",
    "LoggingSettings",
    "OracleSettings",
    "PadeSettings",
    "Settings",
    "SolveOptions",
    "SolverSettings",
]
