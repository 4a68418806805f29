import logging
import math

import numpy as np

from .constants import JENSEN_QUAD_TOL, INITIAL_PANELS, LOG_SINGULAR_FLOOR, INFINITY, QUAD_TOL
from .counting import count_in_disk, locate_values, ORIGIN_TOL
from .engine.errors import InvalidArgument
from .engine.quadrature import AdaptivePanels, tanh_sinh

log = logging.getLogger(__name__)

LOG_FLOOR = math.log(LOG_SINGULAR_FLOOR)


class IdentityCheck(object):
    """
    Both sides of a Jensen type identity

    :ivar residual: |lhs - rhs|
    :ivar radius: the circle radius used (R or its outward perturbation)
    :ivar converged: False when the boundary quadrature hit the panel cap
    :ivar achieved: estimated quadrature error of the boundary integral
    """

    def __init__(self, lhs, rhs, radius, converged, achieved):
        self.lhs = lhs
        self.rhs = rhs
        self.residual = abs(lhs - rhs)
        self.radius = radius
        self.converged = converged
        self.achieved = achieved

    def __float__(self):
        return float(self.residual)

    def __repr__(self):
        return "IdentityCheck(residual=%.3g, radius=%r, converged=%r)" % (self.residual, self.radius, self.converged)


def _boundary_average(oracle, radius, weight, tol):
    """
    (1/2 pi) integral of weight(phi) log|f(R e^{i phi})| over a full turn

    Panels on which |f| falls below the singular floor are narrowed and handed to tanh-sinh.
    """

    def log_modulus(phi):
        values, _ = oracle.evaluate_many(radius * np.exp(1j * phi))
        with np.errstate(divide='ignore'):
            return np.log(np.abs(values))

    def integrand(phi):
        return weight(phi) * log_modulus(phi) / (2.0 * math.pi)

    def singular(lo, hi, fx):
        return bool(np.min(log_modulus(np.array([lo, 0.5 * (lo + hi), hi]))) < LOG_FLOOR) or \
            not np.all(np.isfinite(fx))

    def fallback(lo, hi):
        return tanh_sinh(lambda phi: float(integrand(np.array([phi]))[0]), lo, hi)

    panels = max(INITIAL_PANELS, int(math.ceil(4.0 * radius)))
    quad = AdaptivePanels(integrand, tol, singular=singular, fallback=fallback)
    return quad.integrate(0.0, 2.0 * math.pi, panels)


def _free_radius(oracle, R):
    dz = count_in_disk(oracle, R, 0.0)
    dp = count_in_disk(oracle, dz.radius, INFINITY)
    return max(dz.radius, dp.radius)


def jensen_check(oracle, R, quad_tol=JENSEN_QUAD_TOL):
    """
    Jensen's formula on |s| = R

    log|a_m| + m log R = (1/2 pi) int log|f(R e^{i phi})| d phi
                         + sum log(|a_k|/R) over zeros - sum log(|b_k|/R) over poles,

    with m the order of f at the origin and a_m its leading coefficient;
    zeros and poles at the origin are left out of the sums.

    :param oracle: the function
    :param R: radius
    :param quad_tol: tolerance of the boundary integral (optional, default: 1e-11)
    :rtype: IdentityCheck
    """
    radius = _free_radius(oracle, R)
    m, c = oracle.laurent_at_origin(0.0)
    lhs = math.log(abs(c)) + m * math.log(radius)
    zeros = [rec for rec in locate_values(oracle, radius, 0.0) if abs(rec.position) > ORIGIN_TOL]
    poles = [rec for rec in locate_values(oracle, radius, INFINITY) if abs(rec.position) > ORIGIN_TOL]
    result = _boundary_average(oracle, radius, lambda phi: 1.0, quad_tol)
    terms = [result.value.real]
    terms.extend(rec.multiplicity * math.log(abs(rec.position) / radius) for rec in zeros)
    terms.extend(-rec.multiplicity * math.log(abs(rec.position) / radius) for rec in poles)
    rhs = math.fsum(terms)
    check = IdentityCheck(lhs, rhs, radius, result.converged, result.achieved)
    if not result.converged:
        log.warning(oracle.name + ": Jensen boundary integral did not converge, achieved " + str(result.achieved))
    log.debug(oracle.name + ": " + repr(check))
    return check


def jensen_residual(oracle, R, quad_tol=JENSEN_QUAD_TOL):
    """
    |LHS - RHS| of Jensen's formula

    :rtype: float

    :example:
        >>> jensen_residual(as_oracle(make_sum([(0, 1), (1, -1)])), 3) < 1e-8
        True
    """
    return jensen_check(oracle, R, quad_tol).residual


def _blaschke(s, point, radius):
    return math.log(abs(radius * (s - point) / (radius ** 2 - point.conjugate() * s)))


def poisson_jensen_check(oracle, s, R, quad_tol=JENSEN_QUAD_TOL):
    """
    Poisson-Jensen formula at an interior point s

    log|f(s)| = (1/2 pi) int Re[(R e^{i phi} + s)/(R e^{i phi} - s)] log|f(R e^{i phi})| d phi
                + sum log|R(s - a_k)/(R^2 - conj(a_k) s)| - sum log|R(s - b_k)/(R^2 - conj(b_k) s)|

    :param oracle: the function
    :param s: interior point with f(s) finite and nonzero
    :param R: radius
    :rtype: IdentityCheck
    """
    s = complex(s)
    radius = _free_radius(oracle, R)
    if abs(s) >= radius:
        raise InvalidArgument("the point " + str(s) + " is not inside |s| < " + str(radius))
    value, _ = oracle.evaluate(s)
    if value == 0 or not np.isfinite(value):
        raise InvalidArgument("f(s) must be finite and nonzero at " + str(s))
    zeros = locate_values(oracle, radius, 0.0, QUAD_TOL)
    poles = locate_values(oracle, radius, INFINITY, QUAD_TOL)

    def kernel(phi):
        w = radius * np.exp(1j * phi)
        return np.real((w + s) / (w - s))

    result = _boundary_average(oracle, radius, kernel, quad_tol)
    terms = [result.value.real]
    terms.extend(rec.multiplicity * _blaschke(s, rec.position, radius) for rec in zeros)
    terms.extend(-rec.multiplicity * _blaschke(s, rec.position, radius) for rec in poles)
    check = IdentityCheck(math.log(abs(value)), math.fsum(terms), radius, result.converged, result.achieved)
    log.debug(oracle.name + ": Poisson-Jensen at " + str(s) + " " + repr(check))
    return check


def poisson_jensen_residual(oracle, s, R, quad_tol=JENSEN_QUAD_TOL):
    return poisson_jensen_check(oracle, s, R, quad_tol).residual
