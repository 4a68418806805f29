import csv
import json
import logging
import os
import platform
import sys
import time

import mpmath
import numpy as np
import scipy

from ..constants import CSV_COLUMNS
from .utils import format_number

log = logging.getLogger(__name__)


def ensure_dir(path):
    if path and not os.path.isdir(path):
        os.makedirs(path)
        log.debug("Created output directory " + path)


def dumps(data):
    """
    Deterministic JSON text: sorted keys, fixed separators, trailing newline
    """
    return json.dumps(data, sort_keys=True, indent=2, default=_default) + "\n"


def _default(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError("cannot serialise " + repr(value))


def write_json(path, data):
    ensure_dir(os.path.dirname(path))
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        stream.write(dumps(data))
    log.info("Wrote " + path)


def write_table(path, table):
    """
    Write a CountingTable with its header, replacing the file
    """
    ensure_dir(os.path.dirname(path))
    with open(path, "w", encoding="utf-8", newline="") as stream:
        table.to_csv(stream)
    log.info("Wrote " + path)


def append_row(path, row):
    """
    Append one counting row to a CSV file, writing the header for a new file
    """
    ensure_dir(os.path.dirname(path))
    new = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        if new:
            writer.writerow(CSV_COLUMNS)
        writer.writerow([format_number(v) for v in row])
    log.info("Appended a row to " + path)


def versions():
    from .. import __version__

    return {
        "dirichletlib": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "mpmath": mpmath.__version__,
    }


class Manifest(object):
    """
    Record of one command line run: config echo, tolerances, seed, versions and wall time
    """

    def __init__(self, command, config):
        self.command = command
        self.config = config
        self.started = time.time()
        self.outputs = []
        self.exit_code = None

    def add_output(self, path):
        self.outputs.append(path)

    def to_dict(self):
        return {
            "command": self.command,
            "config": self.config,
            "versions": versions(),
            "seed": self.config.get("seed"),
            "outputs": list(self.outputs),
            "exit_code": self.exit_code,
            "wall_time": round(time.time() - self.started, 6),
        }

    def emit(self, out_dir=None, stream=None):
        """
        Write manifest.json into out_dir, or one JSON line to stream (stderr by default)
        """
        data = self.to_dict()
        if out_dir:
            write_json(os.path.join(out_dir, "manifest.json"), data)
        else:
            stream = stream or sys.stderr
            stream.write(json.dumps(data, sort_keys=True, default=_default) + "\n")
