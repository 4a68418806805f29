import logging
import math
import numbers

from ..constants import CSV_FLOAT_FORMAT

log = logging.getLogger(__name__)


def get_key(keytable, version=None):
    if version in keytable.keys():
        return keytable[version]
    else:
        return keytable['DEFAULT']


def complex_to_pair(value):
    """
    Serialise a complex number as [re, im]; infinity is written as the string "inf"
    """
    if value is None:
        return None
    if isinstance(value, numbers.Real) and math.isinf(value):
        return "inf"
    value = complex(value)
    return [value.real, value.imag]


def pair_to_complex(pair):
    if isinstance(pair, numbers.Number):
        return complex(pair)
    if isinstance(pair, str):
        if pair.strip().lower() in ("inf", "infinity", "oo"):
            return math.inf
        return complex(pair.replace(" ", ""))
    if len(pair) != 2:
        raise ValueError("a complex value needs exactly two entries [re, im], got " + repr(pair))
    return complex(float(pair[0]), float(pair[1]))


def format_number(value):
    if isinstance(value, numbers.Integral):
        return str(value)
    return CSV_FLOAT_FORMAT % value


def lexicographic(z):
    return (round(z.real, 12), round(z.imag, 12))
