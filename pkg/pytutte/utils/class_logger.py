"""Mixin Logger for per Class logging."""

import logging
import sys


class LoggerMixin:
    """A mixin class that provides a class-specific logger."""

    _loggers: dict[str, logging.Logger] = {}

    @classmethod
    def get_logger(cls) -> logging.Logger:
        """
        Get a logger for the class.

        Returns:
            logging.Logger: A logger instance specific to the class.

        """
        class_name = cls.__name__
        if class_name not in cls._loggers:
            cls._loggers[class_name] = logging.getLogger(f"{cls.__module__}.{class_name}")
        return cls._loggers[class_name]

    @property
    def logger(self) -> logging.Logger:
        """
        Property to access the class logger.

        Returns:
            logging.Logger: A logger instance specific to the class.

        """
        return self.get_logger()


CONSOLE_FORMAT = "%(levelname)s %(name)s: %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d:%(funcName)s - %(message)s"


def configure_logging(level: int = logging.WARNING, log_format: str | None = None, log_file: str | None = None) -> None:
    """
    Configure the logging system.

    Console records go to stderr in a compact form so that command results written to stdout stay parseable;
    the optional log file gets timestamps and source locations.

    Args:
        level: The logging level to use.
        log_format: Overrides the format of both handlers.
        log_file: The file to write log messages to.

    """
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(log_format or CONSOLE_FORMAT))
    handlers: list[logging.Handler] = [console_handler]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(log_format or FILE_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=level, handlers=handlers, force=True)


def level_from_name(name: str) -> int:
    """
    Translate a level name such as ``"info"`` into a logging level.

    Args:
        name: Case-insensitive level name.

    Returns:
        int: The numeric logging level.

    Raises:
        ValueError: If the name is not a known level.

    """
    mapping = logging.getLevelNamesMapping()
    try:
        return mapping[name.upper()]
    except KeyError as e:
        raise ValueError(f"Unknown log level '{name}'") from e
