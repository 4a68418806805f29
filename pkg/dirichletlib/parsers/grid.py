import logging
import math
import re

import numpy as np

from ..constants import PAT_GRID, PAT_COMPLEX_PAIR, PAT_INFINITY, INFINITY
from ..engine.errors import ConfigError

log = logging.getLogger(__name__)


class GridSpec(object):
    """
    Radius grid written as "a:b:n" (linear) or "a:b:nlog" (geometric)

    :param text: the grid text
    :param field: flag name used in error messages (optional, default: 'grid')

    :example:
        >>> [round(r, 2) for r in GridSpec("5:50:8log").values]
        [5.0, 6.95, 9.65, 13.41, 18.64, 25.9, 35.98, 50.0]
    """

    def __init__(self, text, field="grid"):
        self._group_dict = {}
        self._field = field
        self.process(text)
        log.debug(self._group_dict)

    def process(self, text):
        match = re.compile(PAT_GRID).match(text)
        if not match:
            raise ConfigError(self._field, "expected 'start:stop:count' or 'start:stop:countlog', got " + repr(text))
        self._group_dict = match.groupdict()

    @property
    def start(self):
        return _to_float(self._group_dict['start'], self._field)

    @property
    def stop(self):
        return _to_float(self._group_dict['stop'], self._field)

    @property
    def count(self):
        return int(self._group_dict['count'])

    @property
    def logarithmic(self):
        return self._group_dict.get('log') is not None

    @property
    def values(self):
        start, stop, count = self.start, self.stop, self.count
        if count < 1:
            raise ConfigError(self._field, "a grid needs at least one point")
        if count == 1:
            return [stop]
        if not 0 < start < stop:
            raise ConfigError(self._field, "grid radii must satisfy 0 < start < stop, got " + str((start, stop)))
        if self.logarithmic:
            points = np.geomspace(start, stop, count)
        else:
            points = np.linspace(start, stop, count)
        points[0], points[-1] = start, stop
        return [float(p) for p in points]


def _to_float(text, field):
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(field, "not a number: " + repr(text))
    if not math.isfinite(value):
        raise ConfigError(field, "not a finite number: " + repr(text))
    return value


def parse_grid(text, field="grid"):
    """
    Radii from a grid text, or from a single number

    :rtype: list of float
    """
    text = str(text)
    if ":" not in text:
        value = _to_float(text, field)
        if value <= 0:
            raise ConfigError(field, "radius must be positive, got " + text)
        return [value]
    return GridSpec(text, field).values


def parse_complex(text, field="a"):
    """
    Complex literal: "2", "1+2j", "1,2" or "inf"

    :example:
        >>> parse_complex("1,2")
        (1+2j)
    """
    text = str(text)
    if re.compile(PAT_INFINITY, re.IGNORECASE).match(text):
        return INFINITY
    match = re.compile(PAT_COMPLEX_PAIR).match(text)
    if match:
        return complex(_to_float(match.group('re'), field), _to_float(match.group('im'), field))
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ConfigError(field, "not a complex number: " + repr(text))
