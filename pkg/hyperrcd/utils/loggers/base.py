"""Base run-telemetry logger."""

import abc
from typing import Any, Mapping

LoggingData = Mapping[str, Any]


class Logger(abc.ABC):
    """A logger has a `write` method."""

    @abc.abstractmethod
    def write(self, data: LoggingData):
        """Writes `data` to destination (file, terminal, ...)."""

    def close(self):
        pass


class NoOpLogger(Logger):
    """Swallows everything, for library calls that want no telemetry."""

    def write(self, data: LoggingData):
        pass


class MultiLogger(Logger):
    """Fans every record out to several loggers."""

    def __init__(self, *loggers: Logger):
        self._loggers = loggers

    def write(self, data: LoggingData):
        for logger in self._loggers:
            logger.write(data)

    def close(self):
        for logger in self._loggers:
            logger.close()
