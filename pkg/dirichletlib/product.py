import logging
import math

import numpy as np

from .constants import GROWTH_CONSTANT
from .engine.errors import InvalidArgument
from .oracle import MeromorphicOracle
from .series import EPS

log = logging.getLogger(__name__)

DIRECT_PRODUCT_LIMIT = 8


class GenusOneProduct(MeromorphicOracle):
    """
    Canonical product of genus one, prod (1 - s/w) e^{s/w}, over a finite zero list

    Small lists are multiplied out directly; longer ones accumulate the complex
    logarithms of the factors and exponentiate once. Each factor's log is a valid
    logarithm, so the exponential of the sum does not depend on branch choices.

    :param zeros: nonzero complex zeros, repeated for multiplicity
    :type zeros: list

    :example:
        >>> value, bound = GenusOneProduct([1j, -1j]).evaluate(1)
        >>> round(value.real, 12)
        2.0
    """

    def __init__(self, zeros):
        zeros = np.array([complex(w) for w in zeros], dtype=complex)
        if np.any(zeros == 0):
            raise InvalidArgument("the product excludes zeros at the origin, factor s^m out separately")
        super(GenusOneProduct, self).__init__("W[" + str(len(zeros)) + " zeros]", declared_order=None)
        self.zeros = zeros

    @property
    def size(self):
        return len(self.zeros)

    def _factors(self, points):
        u = np.divide.outer(points, self.zeros)
        return 1.0 - u, u

    def _values(self, points):
        if self.zeros.size == 0:
            return np.ones(points.shape, dtype=complex), np.zeros(points.shape)
        one_minus, u = self._factors(points)
        if self.zeros.size <= DIRECT_PRODUCT_LIMIT:
            values = np.prod(one_minus * np.exp(u), axis=-1)
        else:
            with np.errstate(divide='ignore', invalid='ignore'):
                logs = np.log(one_minus) + u
                total = np.sum(logs, axis=-1)
                values = np.where(np.isneginf(total.real), 0j, np.exp(total))
        bounds = EPS * np.abs(values) * (4.0 * self.zeros.size + np.sum(np.abs(u), axis=-1))
        return values, bounds

    def _derivatives(self, points):
        values, bounds = self._values(points)
        if self.zeros.size == 0:
            return np.zeros(points.shape, dtype=complex), bounds
        one_minus, u = self._factors(points)
        with np.errstate(divide='ignore', invalid='ignore'):
            log_derivative = np.sum(1.0 / np.subtract.outer(points, self.zeros) + 1.0 / self.zeros, axis=-1)
            derivatives = values * log_derivative
        # points sitting on a zero: product rule with the vanishing factor differentiated
        hit = ~np.isfinite(derivatives) | (values == 0)
        for idx in zip(*np.nonzero(hit)):
            s = points[idx]
            factors = one_minus[idx] * np.exp(u[idx])
            dfactors = -(s / self.zeros ** 2) * np.exp(u[idx])
            total = 0j
            for k in range(self.zeros.size):
                others = np.prod(np.delete(factors, k))
                total += dfactors[k] * others
            derivatives[idx] = total
        return derivatives, bounds * (1.0 + np.abs(np.nan_to_num(log_derivative)))

    @property
    def limit_at_plus_infinity(self):
        return None

    def _laurent(self):
        return 0, 1 + 0j


def weierstrass_oracle(zeros):
    """
    Entire oracle vanishing exactly at the listed zeros, with their multiplicities

    :param zeros: nonzero complex numbers, a repeated entry is a multiple zero
    :rtype: GenusOneProduct
    :raises InvalidArgument: when 0 is in the list
    """
    return GenusOneProduct(zeros)


def counting_integrals(zeros, x):
    """
    x int_0^x n(t)/t^2 dt and x^2 int_x^inf n(t)/t^3 dt for the counting function of a finite list

    :rtype: tuple of float
    """
    moduli = [abs(complex(w)) for w in zeros]
    inner = math.fsum(1.0 / m - 1.0 / x for m in moduli if m <= x)
    outer = math.fsum(1.0 / (2.0 * max(x, m) ** 2) for m in moduli)
    return x * inner, x ** 2 * outer


def growth_bound_check(zeros, s):
    """
    Compare log|prod(s)| with 4(2 + log 2){|s| int_0^|s| n(t)/t^2 dt + |s|^2 int_|s|^inf n(t)/t^3 dt}

    :param zeros: nonzero zeros of the product
    :param s: evaluation point, s != 0
    :return: (lhs, rhs); lhs is -inf when s is one of the zeros
    :rtype: tuple

    :example:
        >>> lhs, rhs = growth_bound_check([10], 1)
        >>> round(rhs, 4)
        0.0539
    """
    s = complex(s)
    if s == 0:
        raise InvalidArgument("the growth bound is stated for s != 0")
    zeros = [complex(w) for w in zeros]
    if any(w == 0 for w in zeros):
        raise InvalidArgument("the product excludes zeros at the origin")
    terms = []
    for w in zeros:
        factor = abs(1.0 - s / w)
        if factor == 0:
            log.info("Growth bound evaluated at the zero " + str(w) + ", lhs is -inf")
            terms = [-math.inf]
            break
        terms.append(math.log(factor) + (s / w).real)
    lhs = math.fsum(terms) if terms else 0.0
    first, second = counting_integrals(zeros, abs(s))
    rhs = GROWTH_CONSTANT * (first + second)
    return lhs, rhs
