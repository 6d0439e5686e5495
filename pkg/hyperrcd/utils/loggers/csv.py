"""Per-iteration CSV logger."""

import csv
from typing import Optional, Sequence

from absl import logging

from hyperrcd.utils.loggers import base


class CSVLogger(base.Logger):
    """Appends one row per `write`; the header is written once.

    Columns are fixed by the first record (or by `fieldnames`), so every run of the
    same command produces the same column order.
    """

    def __init__(self, output_file: str,
                 fieldnames: Optional[Sequence[str]] = None):
        self._output_file = output_file
        self._fieldnames = list(fieldnames) if fieldnames else None
        self._header_exists = False
        logging.debug('Logging to %s', self._output_file)

    def write(self, data: base.LoggingData):
        if self._fieldnames is None:
            self._fieldnames = list(data.keys())
        mode = 'a' if self._header_exists else 'w'
        with open(self._output_file, mode=mode, newline='') as f:
            writer = csv.DictWriter(f, fieldnames=self._fieldnames)
            if not self._header_exists:
                writer.writeheader()
                self._header_exists = True
            writer.writerow(data)
