from helmflow.logging.config import configure_logging


__all__ = ["configure_logging"]
