"""Pretty one-line summaries on the terminal."""

import time
from typing import Any, Callable

import numpy as np
from absl import logging

from hyperrcd.utils.loggers import base


def _format_key(key: str) -> str:
    return key.replace('_', ' ').title()


def _format_value(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return '{:0.4g}'.format(value)
    return '{}'.format(value)


def serialize(values: base.LoggingData) -> str:
    """Formats `values` as "Key = value | ..." in insertion order.

    For example:
        serialize({'k': 3, 'min_kappa': -0.123456})
        # Returns "K = 3 | Min Kappa = -0.1235"
    """
    return ' | '.join('{} = {}'.format(_format_key(k), _format_value(v))
                      for k, v in values.items())


class TerminalLogger(base.Logger):
    """Logs through absl, at most once every `time_delta` seconds."""

    def __init__(
            self,
            label: str = '',
            print_fn: Callable[[str], None] = logging.info,
            serialize_fn: Callable[[base.LoggingData], str] = serialize,
            time_delta: float = 0.0,
    ):
        self._print_fn = print_fn
        self._serialize_fn = serialize_fn
        self._label = label and '[{}] '.format(_format_key(label))
        self._time = time.time() - time_delta
        self._time_delta = time_delta

    def write(self, values: base.LoggingData):
        now = time.time()
        if (now - self._time) >= self._time_delta:
            self._print_fn('{}{}'.format(self._label, self._serialize_fn(values)))
            self._time = now
