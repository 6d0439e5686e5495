from hyperrcd.utils.loggers.base import Logger, LoggingData, MultiLogger, NoOpLogger
from hyperrcd.utils.loggers.csv import CSVLogger
from hyperrcd.utils.loggers.terminal import TerminalLogger, serialize
