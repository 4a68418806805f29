import logging
import math

import mpmath
import numpy as np

from .constants import DIRICHLET, EXPONENTIAL, VALID_CONVENTIONS, TAIL_MARGIN
from .engine.errors import InvalidSeries, ToleranceUnattainable, ValidityExceeded

log = logging.getLogger(__name__)

EPS = np.finfo(float).eps


class TailBound(object):
    """
    Bound on the omitted tail of a truncated infinite Dirichlet series

    Terms beyond the listed ones satisfy |a_n| <= coefficient_bound and
    lambda_n >= growth_floor * log(n), n counting from 1 over the whole series.

    :param coefficient_bound: C
    :type coefficient_bound: float
    :param growth_floor: g
    :type growth_floor: float

    :example:
        >>> tail = TailBound(1.0, 1.0)    # zeta: a_n = 1, lambda_n = log n
        >>> tail.abscissa
        1.0
    """

    def __init__(self, coefficient_bound, growth_floor):
        if coefficient_bound < 0 or growth_floor <= 0:
            raise InvalidSeries("tail bound needs coefficient_bound >= 0 and growth_floor > 0")
        self.coefficient_bound = float(coefficient_bound)
        self.growth_floor = float(growth_floor)

    @property
    def abscissa(self):
        return 1.0 / self.growth_floor

    def value_bound(self, n_terms, sigma):
        """
        Bound on |sum over n > n_terms of a_n e^{-lambda_n s}| for Re(s) = sigma

        :rtype: float
        """
        p = self.growth_floor * sigma
        if p <= 1.0:
            return math.inf
        return self.coefficient_bound * n_terms ** (1.0 - p) / (p - 1.0)

    def derivative_bound(self, n_terms, sigma):
        """
        Bound on the tail of the termwise derivative for Re(s) = sigma

        :rtype: float
        """
        p = self.growth_floor * sigma
        if p <= 1.0:
            return math.inf
        if self.growth_floor * math.log(n_terms + 1) * sigma < 1.0 or n_terms < math.exp(1.0 / p):
            # lambda e^{-lambda sigma} is only decreasing past lambda = 1/sigma
            return math.inf
        g = self.growth_floor
        return self.coefficient_bound * g * n_terms ** (1.0 - p) * (
            math.log(n_terms) / (p - 1.0) + 1.0 / (p - 1.0) ** 2)


class ExponentialSum(object):
    """
    Finite exponential sum, optionally the truncation of an infinite series

    Terms are (lambda, a) pairs with lambda strictly increasing. In Dirichlet form
    the sum is sum a e^{-lambda s}, in exponential form sum a e^{+lambda s}.

    :param terms: list of (lambda, a)
    :type terms: list
    :param sign_convention: 'dirichlet' or 'exponential' (optional, default: 'dirichlet')
    :type sign_convention: str
    :param tail_bound: bound on the omitted tail (optional, Dirichlet form only)
    :type tail_bound: TailBound
    :param declared_order: order of growth of the function, catalog metadata (optional)
    :type declared_order: float

    :example:
        >>> f = ExponentialSum([(0.0, 1), (math.log(2), 1)])
        >>> f.trivial
        False
        >>> f.limit_at_plus_infinity
        (1+0j)

    .. warning:: a sum with fewer than 2 nonzero terms is accepted but flagged trivial
    """

    def __init__(self, terms, sign_convention=DIRICHLET, tail_bound=None, declared_order=None):
        if sign_convention not in VALID_CONVENTIONS:
            raise InvalidSeries("sign convention must be one of " + str(VALID_CONVENTIONS) + ", got " +
                                repr(sign_convention))
        terms = list(terms)
        if not terms:
            raise InvalidSeries("an exponential sum needs at least one term")
        lambdas = np.array([float(lam) for lam, _ in terms])
        coefficients = np.array([complex(a) for _, a in terms])
        if not np.all(np.isfinite(lambdas)) or not np.all(np.isfinite(coefficients)):
            raise InvalidSeries("exponents and coefficients must be finite")
        if np.any(np.diff(lambdas) <= 0):
            raise InvalidSeries("exponents must be strictly increasing, got " + str(list(lambdas)))
        if not np.any(coefficients != 0):
            raise InvalidSeries("all coefficients are zero")
        if tail_bound is not None and sign_convention != DIRICHLET:
            raise InvalidSeries("tail bounds are only defined for Dirichlet form")
        self._lambdas = lambdas
        self._coefficients = coefficients
        self._convention = sign_convention
        self._sign = -1.0 if sign_convention == DIRICHLET else 1.0
        self._tail = tail_bound
        self._declared_order = declared_order
        log.debug("Created exponential sum with " + str(len(terms)) + " terms (" + sign_convention + ")")

    @property
    def terms(self):
        return [(float(lam), complex(a)) for lam, a in zip(self._lambdas, self._coefficients)]

    @property
    def lambdas(self):
        return self._lambdas.copy()

    @property
    def coefficients(self):
        return self._coefficients.copy()

    @property
    def sign_convention(self):
        return self._convention

    @property
    def sign(self):
        """
        -1 for Dirichlet form, +1 for exponential form

        :rtype: float
        """
        return self._sign

    @property
    def tail_bound(self):
        return self._tail

    @property
    def declared_order(self):
        return self._declared_order

    @property
    def abscissa(self):
        """
        Convergence abscissa b: -inf for a finite sum, 1/g for a tail bounded one
        """
        if self._tail is None:
            return -math.inf
        return self._tail.abscissa

    @property
    def nonzero_terms(self):
        return [(lam, a) for lam, a in self.terms if a != 0]

    @property
    def trivial(self):
        """
        True when the sum has fewer than two nonzero terms, i.e. it is c e^{-lambda s}

        :rtype: bool
        """
        return self._tail is None and len(self.nonzero_terms) < 2

    @property
    def dirichlet_exponents(self):
        """
        Exponents mu with the sum written as sum a e^{-mu s}, in increasing order of mu

        :return: (mu, a) arrays
        """
        mu = -self._sign * self._lambdas
        order = np.argsort(mu, kind="stable")
        return mu[order], self._coefficients[order]

    @property
    def leading_exponent(self):
        """
        lambda_1: the smallest Dirichlet exponent carrying a nonzero coefficient
        """
        mu, a = self.dirichlet_exponents
        return float(mu[a != 0][0])

    @property
    def leading_coefficient(self):
        mu, a = self.dirichlet_exponents
        return complex(a[a != 0][0])

    @property
    def limit_at_plus_infinity(self):
        """
        Limit of the sum as Re(s) -> +inf

        :return: the coefficient of the zero exponent, 0 when all exponents are positive,
                 None when the sum is unbounded
        """
        mu, a = self.dirichlet_exponents
        nz = a != 0
        if np.any(mu[nz] < 0):
            return None
        zero = nz & (mu == 0)
        if np.any(zero):
            return complex(a[zero][0])
        return 0j

    def normalized(self):
        """
        e^{lambda_1 s} f(s) as a Dirichlet sum; its limit at +inf is a_1

        :rtype: ExponentialSum
        """
        mu, a = self.dirichlet_exponents
        lam1 = self.leading_exponent
        keep = a != 0
        terms = [(float(m - lam1), complex(c)) for m, c in zip(mu[keep], a[keep])]
        return ExponentialSum(terms, DIRICHLET, tail_bound=None, declared_order=self._declared_order)

    def __len__(self):
        return len(self._lambdas)

    def __repr__(self):
        return "ExponentialSum(%r, %r)" % (self.terms, self._convention)


def make_sum(terms, sign_convention=DIRICHLET, tail_bound=None, declared_order=None):
    """
    Validate terms and build an ExponentialSum

    :param terms: list of (lambda, a), lambda strictly increasing
    :param sign_convention: 'dirichlet' or 'exponential'
    :return: the sum
    :rtype: ExponentialSum
    :raises InvalidSeries: on empty, unordered or all-zero input

    :example:
        >>> f = make_sum([(0, 1), (math.log(2), 1)])
    """
    s = ExponentialSum(terms, sign_convention, tail_bound, declared_order)
    if s.trivial:
        log.info("Exponential sum " + repr(s) + " has fewer than two nonzero terms and is trivial")
    return s


def _check_region(series, points):
    if series.tail_bound is None:
        return
    floor = series.abscissa + TAIL_MARGIN
    low = float(np.min(np.real(points)))
    if low < floor:
        raise ValidityExceeded("Re(s) = " + str(low) + " is below the convergence region Re(s) >= " + str(floor))


def _power_matrix(series, points):
    return np.exp(np.multiply.outer(points, series.sign * series.lambdas))


def _rounding(series, points, terms):
    absterms = np.abs(terms)
    n = len(series)
    growth = np.abs(np.multiply.outer(points, series.lambdas))
    return EPS * np.sum(absterms * (n + 4.0 + growth), axis=-1)


def _finish(series, values, bounds, tail, tol):
    bounds = bounds + tail
    if tol is not None:
        worst = float(np.max(bounds))
        if worst > tol:
            raise ToleranceUnattainable("requested tolerance " + repr(tol) + " cannot be met", worst)
    return values, bounds


def _evaluate_mp(series, points, dps, derivative):
    values = []
    bounds = []
    # private context, the global mpmath precision is shared between threads
    ctx = mpmath.MPContext()
    ctx.dps = dps
    unit = ctx.mpf(10) ** (-dps)
    for s in points:
        acc = ctx.mpc(0)
        size = ctx.mpf(0)
        for lam, a in zip(series.lambdas, series.coefficients):
            term = ctx.mpc(a) * ctx.exp(series.sign * ctx.mpf(lam) * ctx.mpc(s))
            if derivative:
                term = term * series.sign * ctx.mpf(lam)
            acc += term
            size += abs(term) * (len(series) + 4 + abs(lam * s))
        value = complex(acc)
        values.append(value)
        bounds.append(float(unit * size) + EPS * abs(value))
    return np.array(values), np.array(bounds)


def evaluate_array(series, points, tol=None, dps=None):
    """
    Vectorised evaluation with error bounds

    :param points: numpy array of complex points
    :return: (values, bounds)
    """
    points = np.asarray(points, dtype=complex)
    _check_region(series, points)
    if dps is not None:
        values, bounds = _evaluate_mp(series, points.ravel(), dps, False)
        values = values.reshape(points.shape)
        bounds = bounds.reshape(points.shape)
    else:
        terms = _power_matrix(series, points) * series.coefficients
        values = np.sum(terms, axis=-1)
        bounds = _rounding(series, points, terms)
    tail = 0.0
    if series.tail_bound is not None:
        sigma = np.real(points)
        tail = np.array([series.tail_bound.value_bound(len(series), x) for x in np.ravel(sigma)]).reshape(
            points.shape)
    return _finish(series, values, bounds, tail, tol)


def derivative_array(series, points, tol=None, dps=None):
    points = np.asarray(points, dtype=complex)
    _check_region(series, points)
    if dps is not None:
        values, bounds = _evaluate_mp(series, points.ravel(), dps, True)
        values = values.reshape(points.shape)
        bounds = bounds.reshape(points.shape)
    else:
        terms = _power_matrix(series, points) * (series.coefficients * series.sign * series.lambdas)
        values = np.sum(terms, axis=-1)
        bounds = _rounding(series, points, terms)
    tail = 0.0
    if series.tail_bound is not None:
        sigma = np.real(points)
        tail = np.array([series.tail_bound.derivative_bound(len(series), x) for x in np.ravel(sigma)]).reshape(
            points.shape)
    return _finish(series, values, bounds, tail, tol)


def evaluate(series, s, tol=None, dps=None):
    """
    Evaluate an exponential sum at one point

    :param series: the sum
    :type series: ExponentialSum
    :param s: complex point
    :param tol: required bound on the absolute error (optional)
    :param dps: decimal digits for the extended precision path (optional)
    :return: (value, error bound)
    :rtype: tuple
    :raises ToleranceUnattainable: when the error bound exceeds tol
    :raises ValidityExceeded: below the convergence region of a tail bounded sum

    :example:
        >>> value, bound = evaluate(make_sum([(0, 1), (math.log(2), 1)]), 0)
        >>> value
        (2+0j)
    """
    values, bounds = evaluate_array(series, np.array([complex(s)]), tol, dps)
    return complex(values[0]), float(bounds[0])


def derivative(series, s, tol=None, dps=None):
    """
    Termwise derivative sum (+-lambda) a e^{+-lambda s} with an error bound

    :return: (value, error bound)
    :rtype: tuple
    """
    values, bounds = derivative_array(series, np.array([complex(s)]), tol, dps)
    return complex(values[0]), float(bounds[0])


def origin_derivatives(series, count):
    """
    Exact derivatives f^(k)(0) = sum (+-lambda)^k a for k < count

    :rtype: list of complex
    """
    lam = series.sign * series.lambdas
    return [complex(np.sum(series.coefficients * lam ** k)) for k in range(count)]
