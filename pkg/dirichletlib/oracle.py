import logging
import math
import threading

import mpmath
import numpy as np

from .constants import (ORIGIN_ORDER_MAX, ORIGIN_ORDER_THRESHOLD, LAURENT_RADIUS, LAURENT_SAMPLES,
                        ZETA_VALIDITY, ZETA_DPS, INFINITY)
from .engine.errors import InvalidArgument, ValidityExceeded, OriginOrderError
from .series import EPS, ExponentialSum, evaluate_array, derivative_array, origin_derivatives

log = logging.getLogger(__name__)


class ComplexDiskRegion(object):
    """
    Closed disk |s - center| <= radius

    :param center: center of the disk
    :type center: complex
    :param radius: radius, must be positive
    :type radius: float

    :example:
        >>> disk = ComplexDiskRegion(1j, 0.5)
        >>> disk.contains(1.2j)
        True
    """

    def __init__(self, center, radius):
        if not radius > 0:
            raise InvalidArgument("disk radius must be positive, got " + repr(radius))
        self.center = complex(center)
        self.radius = float(radius)

    def contains(self, s, slack=0.0):
        return abs(complex(s) - self.center) <= self.radius * (1.0 + slack)

    def to_list(self):
        return [[self.center.real, self.center.imag], self.radius]

    def __repr__(self):
        return "ComplexDiskRegion(%r, %r)" % (self.center, self.radius)

    def __eq__(self, other):
        return isinstance(other, ComplexDiskRegion) and self.center == other.center and self.radius == other.radius

    def __hash__(self):
        return hash((self.center, self.radius))


class MeromorphicOracle(object):
    """
    Evaluation interface shared by every function the library counts on

    Subclasses implement ``_values`` and ``_derivatives`` on numpy arrays of
    points, returning values together with absolute error bounds. Oracles are
    immutable after construction; evaluation never changes their state.

    :param name: readable name, used in logs and reports
    :type name: str
    :param validity_radius: evaluation is only allowed in |s| <= validity_radius
    :type validity_radius: float
    :param declared_order: order of growth, catalog metadata (optional)
    :type declared_order: float
    """

    def __init__(self, name, validity_radius=math.inf, declared_order=None):
        self._name = name
        self._validity = float(validity_radius)
        self._declared_order = declared_order
        self._laurent_cache = {}
        self._laurent_lock = threading.Lock()

    @property
    def name(self):
        return self._name

    @property
    def validity_radius(self):
        return self._validity

    @property
    def declared_order(self):
        return self._declared_order

    @property
    def limit_at_plus_infinity(self):
        """
        Limit as Re(s) -> +inf, None when unknown or infinite

        :rtype: complex
        """
        return None

    def _check(self, points):
        if math.isinf(self._validity) or points.size == 0:
            return
        far = float(np.max(np.abs(points)))
        if far > self._validity * (1.0 + 1e-12):
            raise ValidityExceeded(self._name + ": |s| = " + str(far) + " exceeds the validity radius " +
                                   str(self._validity))

    def evaluate_many(self, points):
        """
        Evaluate at an array of points

        :param points: array-like of complex points
        :return: (values, error bounds) as numpy arrays
        :raises ValidityExceeded: when a point lies outside the validity disk
        """
        points = np.asarray(points, dtype=complex)
        self._check(points)
        return self._values(points)

    def derivative_many(self, points):
        points = np.asarray(points, dtype=complex)
        self._check(points)
        return self._derivatives(points)

    def evaluate(self, s):
        """
        Evaluate at one point

        :return: (value, error bound)
        :rtype: tuple

        :example:
            >>> value, bound = geometric_oracle().evaluate(math.log(2))
            >>> round(value.real, 12)
            2.0
        """
        values, bounds = self.evaluate_many(np.array([complex(s)]))
        return complex(values[0]), float(bounds[0])

    def derivative(self, s):
        values, bounds = self.derivative_many(np.array([complex(s)]))
        return complex(values[0]), float(bounds[0])

    def _values(self, points):
        raise NotImplementedError

    def _derivatives(self, points):
        raise NotImplementedError

    def pole_positions(self, r):
        """
        Poles with |p| <= r as (position, multiplicity) pairs, sorted by position

        :rtype: list
        """
        return []

    @property
    def poles_declared(self):
        """
        True when pole_positions only reads declared data and never has to locate zeros
        """
        return True

    def _laurent(self):
        return self._fft_laurent(0.0)

    def _fft_laurent(self, a):
        rho = LAURENT_RADIUS
        if rho >= self._validity:
            rho = 0.5 * self._validity
        angles = 2.0 * math.pi * np.arange(LAURENT_SAMPLES) / LAURENT_SAMPLES
        values, _ = self.evaluate_many(rho * np.exp(1j * angles))
        coefficients = np.fft.fft(values - a) / LAURENT_SAMPLES
        for k in range(-ORIGIN_ORDER_MAX, ORIGIN_ORDER_MAX + 1):
            c = complex(coefficients[k % LAURENT_SAMPLES]) / rho ** k
            if abs(c) > ORIGIN_ORDER_THRESHOLD:
                return k, c
        raise OriginOrderError(self._name + ": no Laurent coefficient above " + str(ORIGIN_ORDER_THRESHOLD) +
                               " up to order " + str(ORIGIN_ORDER_MAX) + " at the origin")

    def laurent_at_origin(self, a=0.0):
        """
        Order and leading Laurent coefficient of f - a at s = 0

        A positive order m is a zero of f - a of multiplicity m, a negative one a pole.

        :param a: target value (optional, default: 0)
        :return: (order, leading coefficient)
        :rtype: tuple
        :raises OriginOrderError: when f - a vanishes beyond the configured maximum order
        """
        a = complex(a)
        with self._laurent_lock:
            if a in self._laurent_cache:
                return self._laurent_cache[a]
        m, c = self._laurent()
        if a == 0:
            result = (m, c)
        elif m < 0:
            result = (m, c)
        elif m > 0:
            result = (0, -a)
        elif abs(c - a) > ORIGIN_ORDER_THRESHOLD:
            result = (0, c - a)
        else:
            result = self._shifted_laurent(a)
        log.debug(self._name + ": Laurent data at origin for a=" + str(a) + " is " + str(result))
        with self._laurent_lock:
            self._laurent_cache[a] = result
        return result

    def _shifted_laurent(self, a):
        return self._fft_laurent(a)

    @property
    def origin_order(self):
        return self.laurent_at_origin(0.0)[0]

    @property
    def origin_coefficient(self):
        return self.laurent_at_origin(0.0)[1]

    def __repr__(self):
        return "<%s %s>" % (self.__class__.__name__, self._name)


class SumOracle(MeromorphicOracle):
    """
    Entire oracle of an exponential sum
    """

    def __init__(self, series, name=None):
        super(SumOracle, self).__init__(name or _series_name(series), declared_order=series.declared_order)
        self.series = series

    def _values(self, points):
        return evaluate_array(self.series, points)

    def _derivatives(self, points):
        return derivative_array(self.series, points)

    @property
    def limit_at_plus_infinity(self):
        return self.series.limit_at_plus_infinity

    def _laurent(self):
        return self._derivative_laurent(0.0)

    def _shifted_laurent(self, a):
        return self._derivative_laurent(a)

    def _derivative_laurent(self, a):
        if self.series.tail_bound is not None:
            return self._fft_laurent(a)
        derivatives = origin_derivatives(self.series, ORIGIN_ORDER_MAX + 1)
        derivatives[0] -= a
        for k, d in enumerate(derivatives):
            if abs(d) > ORIGIN_ORDER_THRESHOLD:
                return k, d / math.factorial(k)
        raise OriginOrderError(self._name + ": the first " + str(ORIGIN_ORDER_MAX + 1) +
                               " derivatives at the origin vanish")


class GeometricOracle(MeromorphicOracle):
    """
    1/(1 - e^{-s}): no zeros, simple poles at 2 pi i k
    """

    def __init__(self):
        super(GeometricOracle, self).__init__("1/(1-e^-s)", declared_order=1.0)

    def _values(self, points):
        e = np.exp(-points)
        d = 1.0 - e
        with np.errstate(divide='ignore', invalid='ignore'):
            values = 1.0 / d
            bounds = np.abs(values) * EPS * (2.0 + (1.0 + np.abs(points)) * np.abs(e)) / np.abs(d)
        return values, bounds

    def _derivatives(self, points):
        e = np.exp(-points)
        d = 1.0 - e
        with np.errstate(divide='ignore', invalid='ignore'):
            values = -e / d ** 2
            bounds = np.abs(values) * EPS * (4.0 + 2.0 * (1.0 + np.abs(points)) * np.abs(e) / np.abs(d))
        return values, bounds

    def pole_positions(self, r):
        top = int(math.floor(r / (2.0 * math.pi)))
        return [(complex(0.0, 2.0 * math.pi * k), 1) for k in range(-top, top + 1)]

    @property
    def limit_at_plus_infinity(self):
        return 1 + 0j

    def _laurent(self):
        return -1, 1 + 0j


class ZetaOracle(MeromorphicOracle):
    """
    Riemann zeta function through mpmath, with its simple pole at s = 1

    :param validity_radius: evaluation disk (optional, default: 35)
    :param dps: working decimal digits (optional, default: 30)
    """

    def __init__(self, validity_radius=ZETA_VALIDITY, dps=ZETA_DPS):
        super(ZetaOracle, self).__init__("zeta", validity_radius=validity_radius, declared_order=1.0)
        self._dps = dps
        self._ctx = mpmath.MPContext()
        self._ctx.dps = dps

    def _evaluate(self, points, derivative):
        values = np.empty(points.shape, dtype=complex)
        bounds = np.empty(points.shape, dtype=float)
        unit = 10.0 ** (5 - self._dps)
        for idx, s in np.ndenumerate(points):
            z = self._ctx.mpc(s.real, s.imag)
            if derivative:
                v = complex(self._ctx.zeta(z, 1, 1))
            else:
                v = complex(self._ctx.zeta(z))
            values[idx] = v
            bounds[idx] = unit * max(1.0, abs(v)) + EPS * abs(v)
        return values, bounds

    def _values(self, points):
        return self._evaluate(points, False)

    def _derivatives(self, points):
        return self._evaluate(points, True)

    def pole_positions(self, r):
        return [(1 + 0j, 1)] if r >= 1.0 else []

    @property
    def limit_at_plus_infinity(self):
        return 1 + 0j

    def _laurent(self):
        return 0, -0.5 + 0j


class ExpPolynomialOracle(MeromorphicOracle):
    """
    e^{Q(s)} for a polynomial Q given by ascending coefficients
    """

    def __init__(self, coefficients):
        coefficients = np.array([complex(c) for c in coefficients])
        if coefficients.size == 0:
            raise InvalidArgument("exp_polynomial_oracle needs at least one coefficient")
        super(ExpPolynomialOracle, self).__init__("exp(Q)", declared_order=float(max(len(coefficients) - 1, 0)))
        self.coefficients = coefficients
        self._dcoefficients = np.polynomial.polynomial.polyder(coefficients)

    def _values(self, points):
        q = np.polynomial.polynomial.polyval(points, self.coefficients)
        values = np.exp(q)
        scale = np.polynomial.polynomial.polyval(np.abs(points), np.abs(self.coefficients))
        bounds = np.abs(values) * EPS * (len(self.coefficients) + 4.0) * (1.0 + scale)
        return values, bounds

    def _derivatives(self, points):
        values, bounds = self._values(points)
        dq = np.polynomial.polynomial.polyval(points, self._dcoefficients) if self._dcoefficients.size else 0 * points
        return values * dq, bounds * (np.abs(dq) + EPS)

    @property
    def limit_at_plus_infinity(self):
        if len(self.coefficients) == 1 or not np.any(self.coefficients[1:] != 0):
            return complex(np.exp(self.coefficients[0]))
        return None

    def _laurent(self):
        return 0, complex(np.exp(self.coefficients[0]))


class ShiftOracle(MeromorphicOracle):
    """
    s -> f(s + s0)
    """

    def __init__(self, base, s0):
        s0 = complex(s0)
        validity = base.validity_radius - abs(s0)
        if validity <= 0:
            raise ValidityExceeded("shift by " + str(s0) + " exhausts the validity radius " +
                                   str(base.validity_radius) + " of " + base.name)
        super(ShiftOracle, self).__init__(base.name + "(s+" + str(s0) + ")", validity, base.declared_order)
        self.base = base
        self.s0 = s0

    def _values(self, points):
        return self.base.evaluate_many(points + self.s0)

    def _derivatives(self, points):
        return self.base.derivative_many(points + self.s0)

    def pole_positions(self, r):
        found = self.base.pole_positions(r + abs(self.s0))
        return _sorted_poles((p - self.s0, m) for p, m in found if abs(p - self.s0) <= r)

    @property
    def poles_declared(self):
        return self.base.poles_declared

    @property
    def limit_at_plus_infinity(self):
        return self.base.limit_at_plus_infinity


class QuotientOracle(MeromorphicOracle):
    """
    numer / denom; its poles are the numerator's poles plus the located zeros of the
    denominator, minus common zeros
    """

    def __init__(self, numer, denom):
        validity = min(numer.validity_radius, denom.validity_radius)
        orders = [o for o in (numer.declared_order, denom.declared_order) if o is not None]
        super(QuotientOracle, self).__init__("(" + numer.name + ")/(" + denom.name + ")", validity,
                                             max(orders) if len(orders) == 2 else None)
        self.numer = numer
        self.denom = denom
        self._pole_lock = threading.Lock()
        self._pole_cache = None

    def _values(self, points):
        n, en = self.numer.evaluate_many(points)
        d, ed = self.denom.evaluate_many(points)
        with np.errstate(divide='ignore', invalid='ignore'):
            q = n / d
            bounds = (en + np.abs(q) * ed) / np.abs(d) + EPS * np.abs(q)
        return q, bounds

    def _derivatives(self, points):
        n, en = self.numer.evaluate_many(points)
        d, ed = self.denom.evaluate_many(points)
        dn, edn = self.numer.derivative_many(points)
        dd, edd = self.denom.derivative_many(points)
        with np.errstate(divide='ignore', invalid='ignore'):
            values = (dn * d - n * dd) / d ** 2
            bounds = (edn * np.abs(d) + np.abs(dn) * ed + en * np.abs(dd) + np.abs(n) * edd) / np.abs(d) ** 2 \
                + 2.0 * np.abs(values) * ed / np.abs(d) + EPS * np.abs(values)
        return values, bounds

    @property
    def poles_declared(self):
        return False

    def pole_positions(self, r):
        with self._pole_lock:
            if self._pole_cache is None or self._pole_cache[0] < r:
                self._pole_cache = (r, self._discover_poles(r))
            cached = self._pole_cache[1]
        return [(p, m) for p, m in cached if abs(p) <= r]

    def _discover_poles(self, r):
        from . import counting

        log.debug(self._name + ": locating denominator zeros in |s| <= " + str(r))
        denominator_zeros = counting.locate_values(self.denom, r, 0.0)
        numerator_poles = self.numer.pole_positions(r)
        poles = []
        for rec in denominator_zeros:
            multiplicity = rec.multiplicity
            value, _ = self.numer.evaluate(rec.position)
            ring = rec.position + rec.certification_radius * np.exp(2j * math.pi * np.arange(16) / 16)
            ring_values, _ = self.numer.evaluate_many(ring)
            if abs(value) <= 1e-6 * float(np.max(np.abs(ring_values))):
                common = counting.circle_winding(self.numer, rec.position, rec.certification_radius)
                log.debug(self._name + ": common zero at " + str(rec.position) + " cancels " + str(common))
                multiplicity -= common
            if multiplicity > 0:
                poles.append((rec.position, multiplicity))
        for p, m in numerator_poles:
            if not any(abs(p - rec.position) <= rec.certification_radius for rec in denominator_zeros):
                poles.append((p, m))
        return _sorted_poles(poles)

    @property
    def limit_at_plus_infinity(self):
        top = self.numer.limit_at_plus_infinity
        bottom = self.denom.limit_at_plus_infinity
        if top is None or bottom is None or bottom == 0:
            return None
        return top / bottom

    def _laurent(self):
        m1, c1 = self.numer.laurent_at_origin(0.0)
        m2, c2 = self.denom.laurent_at_origin(0.0)
        return m1 - m2, c1 / c2


class ProductOracle(MeromorphicOracle):
    def __init__(self, first, second):
        orders = [o for o in (first.declared_order, second.declared_order) if o is not None]
        super(ProductOracle, self).__init__("(" + first.name + ")*(" + second.name + ")",
                                            min(first.validity_radius, second.validity_radius),
                                            max(orders) if len(orders) == 2 else None)
        self.first = first
        self.second = second

    def _values(self, points):
        a, ea = self.first.evaluate_many(points)
        b, eb = self.second.evaluate_many(points)
        values = a * b
        return values, ea * np.abs(b) + eb * np.abs(a) + ea * eb + EPS * np.abs(values)

    def _derivatives(self, points):
        a, ea = self.first.evaluate_many(points)
        b, eb = self.second.evaluate_many(points)
        da, eda = self.first.derivative_many(points)
        db, edb = self.second.derivative_many(points)
        values = da * b + a * db
        bounds = eda * np.abs(b) + np.abs(da) * eb + ea * np.abs(db) + np.abs(a) * edb + EPS * np.abs(values)
        return values, bounds

    def pole_positions(self, r):
        merged = {}
        for p, m in list(self.first.pole_positions(r)) + list(self.second.pole_positions(r)):
            key = next((k for k in merged if abs(k - p) <= 1e-9 * max(1.0, abs(p))), p)
            merged[key] = merged.get(key, 0) + m
        return _sorted_poles(merged.items())

    @property
    def poles_declared(self):
        return self.first.poles_declared and self.second.poles_declared

    @property
    def limit_at_plus_infinity(self):
        a = self.first.limit_at_plus_infinity
        b = self.second.limit_at_plus_infinity
        if a is None or b is None:
            return None
        return a * b

    def _laurent(self):
        m1, c1 = self.first.laurent_at_origin(0.0)
        m2, c2 = self.second.laurent_at_origin(0.0)
        return m1 + m2, c1 * c2


class PowerOracle(MeromorphicOracle):
    def __init__(self, base, k):
        if int(k) != k or k < 1:
            raise InvalidArgument("power_oracle needs a positive integer exponent, got " + repr(k))
        k = int(k)
        super(PowerOracle, self).__init__("(" + base.name + ")^" + str(k), base.validity_radius,
                                          base.declared_order)
        self.base = base
        self.k = k

    def _values(self, points):
        f, ef = self.base.evaluate_many(points)
        values = f ** self.k
        return values, self.k * np.abs(f) ** (self.k - 1) * ef * (1.0 + EPS) + EPS * self.k * np.abs(values)

    def _derivatives(self, points):
        f, ef = self.base.evaluate_many(points)
        df, edf = self.base.derivative_many(points)
        values = self.k * f ** (self.k - 1) * df
        bounds = self.k * (np.abs(f) ** (self.k - 1) * edf +
                           (self.k - 1) * np.abs(f) ** max(self.k - 2, 0) * ef * np.abs(df)) \
            + EPS * self.k * np.abs(values)
        return values, bounds

    def pole_positions(self, r):
        return [(p, m * self.k) for p, m in self.base.pole_positions(r)]

    @property
    def poles_declared(self):
        return self.base.poles_declared

    @property
    def limit_at_plus_infinity(self):
        limit = self.base.limit_at_plus_infinity
        return None if limit is None else limit ** self.k

    def _laurent(self):
        m, c = self.base.laurent_at_origin(0.0)
        return m * self.k, c ** self.k


class ScaledOracle(MeromorphicOracle):
    """
    e^{lambda s} f(s); same zeros and poles as f
    """

    def __init__(self, base, lam):
        lam = float(lam)
        orders = 1.0 if base.declared_order is None else max(1.0, base.declared_order)
        super(ScaledOracle, self).__init__("e^(" + str(lam) + "s)*" + base.name, base.validity_radius, orders)
        self.base = base
        self.lam = lam

    def _values(self, points):
        f, ef = self.base.evaluate_many(points)
        e = np.exp(self.lam * points)
        values = e * f
        return values, np.abs(e) * ef + EPS * (3.0 + abs(self.lam) * np.abs(points)) * np.abs(values)

    def _derivatives(self, points):
        f, ef = self.base.evaluate_many(points)
        df, edf = self.base.derivative_many(points)
        e = np.exp(self.lam * points)
        values = e * (self.lam * f + df)
        bounds = np.abs(e) * (abs(self.lam) * ef + edf) + EPS * (4.0 + abs(self.lam) * np.abs(points)) * np.abs(values)
        return values, bounds

    def pole_positions(self, r):
        return self.base.pole_positions(r)

    @property
    def poles_declared(self):
        return self.base.poles_declared

    @property
    def limit_at_plus_infinity(self):
        series = getattr(self.base, "series", None)
        if isinstance(series, ExponentialSum) and series.tail_bound is None \
                and abs(series.leading_exponent - self.lam) <= 1e-15 * max(1.0, abs(self.lam)):
            return series.normalized().limit_at_plus_infinity
        return None

    def _laurent(self):
        return self.base.laurent_at_origin(0.0)


class DifferenceOracle(MeromorphicOracle):
    """
    f(s) - a
    """

    def __init__(self, base, a):
        a = complex(a)
        super(DifferenceOracle, self).__init__(base.name + "-(" + str(a) + ")", base.validity_radius,
                                               base.declared_order)
        self.base = base
        self.a = a

    def _values(self, points):
        f, ef = self.base.evaluate_many(points)
        values = f - self.a
        return values, ef + EPS * np.abs(values)

    def _derivatives(self, points):
        return self.base.derivative_many(points)

    def pole_positions(self, r):
        return self.base.pole_positions(r)

    @property
    def poles_declared(self):
        return self.base.poles_declared

    @property
    def limit_at_plus_infinity(self):
        limit = self.base.limit_at_plus_infinity
        return None if limit is None else limit - self.a

    def _laurent(self):
        return self.base.laurent_at_origin(self.a)


def _series_name(series):
    parts = []
    for lam, a in series.nonzero_terms:
        sign = "-" if series.sign < 0 else ""
        parts.append("%s*e^(%s%gs)" % (_short(a), sign, lam) if lam != 0 else _short(a))
    return "+".join(parts) or "0"


def _short(a):
    if a.imag == 0:
        return "%g" % a.real
    return "(%g%+gj)" % (a.real, a.imag)


def _sorted_poles(pairs):
    return sorted(((complex(p), int(m)) for p, m in pairs), key=lambda pm: (pm[0].real, pm[0].imag))


def as_oracle(series):
    """
    Wrap an exponential sum as an entire oracle

    :param series: the sum
    :type series: ExponentialSum
    :rtype: MeromorphicOracle

    :example:
        >>> f = as_oracle(make_sum([(0, 1), (1, -1)]))     # 1 - e^{-s}
        >>> f.origin_order
        1
    """
    return SumOracle(series)


def geometric_oracle():
    """
    Oracle of 1/(1 - e^{-s})

    :example:
        >>> [p for p, m in geometric_oracle().pole_positions(10)]
        [-6.283185307179586j, 0j, 6.283185307179586j]
    """
    return GeometricOracle()


def zeta_oracle(validity_radius=ZETA_VALIDITY, dps=ZETA_DPS):
    return ZetaOracle(validity_radius, dps)


def exp_polynomial_oracle(coefficients):
    return ExpPolynomialOracle(coefficients)


def shift_oracle(oracle, s0):
    return ShiftOracle(oracle, s0)


def quotient_oracle(numer, denom):
    return QuotientOracle(numer, denom)


def product_oracle(first, second):
    return ProductOracle(first, second)


def power_oracle(oracle, k):
    return PowerOracle(oracle, k)


def scale_by_exponential(oracle, lam):
    return ScaledOracle(oracle, lam)


def difference_oracle(oracle, a):
    if a == INFINITY:
        raise InvalidArgument("difference_oracle needs a finite value")
    return DifferenceOracle(oracle, a)
