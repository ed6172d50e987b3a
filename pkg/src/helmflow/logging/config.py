from logging import Formatter, StreamHandler, WARNING, getLogger

from helmflow.settings.logging import LoggingSettings

_HANDLER_NAME = "helmflow-stderr"


def configure_logging(settings: LoggingSettings) -> None:
    """
    Configures the ``helmflow`` logger tree from the provided settings.

    Calling it again replaces the level, format and stream but never stacks handlers.

    Args:
        settings (LoggingSettings): The logging settings to configure the logger.
    """
    helmflow_logger = getLogger("helmflow")
    helmflow_logger.setLevel(settings.log_level.value)

    for stale in [h for h in helmflow_logger.handlers if h.get_name() == _HANDLER_NAME]:
        helmflow_logger.removeHandler(stale)
    handler = StreamHandler()
    handler.set_name(_HANDLER_NAME)
    helmflow_logger.addHandler(handler)
    handler.setFormatter(Formatter(settings.log_format))

    if settings.silence_external_loggers:
        external_loggers = [
            "numpy",
            "scipy",
            "pydantic",
            "pydantic_settings",
        ]

        for logger in external_loggers:
            getLogger(logger).setLevel(WARNING)
