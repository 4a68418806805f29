import logging
import math
import threading

import mpmath
import numpy as np
from scipy import special

from ..constants import GL_ORDER, INITIAL_PANELS, MAX_PANELS

log = logging.getLogger(__name__)

_rules = {}
_rules_lock = threading.Lock()


def gauss_legendre(npt=GL_ORDER):
    """
    Gauss-Legendre nodes and weights on [-1, 1]

    :param npt: number of nodes
    :type npt: int
    :return: (nodes, weights)
    :rtype: tuple of numpy.ndarray
    """
    with _rules_lock:
        if npt not in _rules:
            _rules[npt] = special.roots_legendre(npt)
        return _rules[npt]


def complex_fsum(values):
    """
    Exactly rounded sum of complex values, independent of the summation order of the inputs
    """
    values = [complex(v) for v in values]
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


class QuadratureResult(object):
    """
    Outcome of an adaptive panel integration

    :ivar value: refined integral (sum of the bisected panel estimates)
    :ivar coarse_value: sum of the unbisected panel estimates
    :ivar panels: number of accepted panels
    :ivar converged: False when the panel cap stopped the refinement
    :ivar achieved: sum of the accepted panel error estimates
    """

    def __init__(self, value, coarse_value, panels, converged, achieved):
        self.value = value
        self.coarse_value = coarse_value
        self.panels = panels
        self.converged = converged
        self.achieved = achieved

    def __repr__(self):
        return "QuadratureResult(value=%r, panels=%d, converged=%r, achieved=%.3g)" % (
            self.value, self.panels, self.converged, self.achieved)


class AdaptivePanels(object):
    """
    Adaptive composite Gauss-Legendre quadrature on an interval

    Every panel is integrated whole and as two halves; a panel is accepted when the
    two estimates agree to its share of the tolerance, otherwise both halves are
    queued. Panels are processed from a stack so the accepted set, and therefore
    the result, only depends on the integrand.

    :param func: vectorised integrand, maps a numpy array of abscissae to values
    :param tol: absolute tolerance on the whole interval
    :type tol: float
    :param npt: nodes per panel (optional, default: 16)
    :param max_panels: panel cap (optional, default: 2**14)
    :param singular: optional callable (lo, hi, samples) -> bool marking a panel as log singular
    :param fallback: optional callable (lo, hi) -> value used on singular panels

    :example:
        >>> quad = AdaptivePanels(np.cos, tol=1e-12)
        >>> round(quad.integrate(0.0, math.pi / 2).value.real, 12)
        1.0
    """

    def __init__(self, func, tol, npt=GL_ORDER, max_panels=MAX_PANELS, singular=None, fallback=None):
        self.func = func
        self.tol = tol
        self.npt = npt
        self.max_panels = max_panels
        self.singular = singular
        self.fallback = fallback
        self._nodes, self._weights = gauss_legendre(npt)

    def _rule(self, lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = mid + half * self._nodes
        fx = self.func(x)
        if self.singular is not None and self.fallback is not None and self.singular(lo, hi, fx):
            return None
        return half * np.dot(self._weights, fx)

    def integrate(self, a, b, initial_panels=INITIAL_PANELS):
        width = b - a
        min_width = abs(width) * 2.0 ** -48
        edges = np.linspace(a, b, initial_panels + 1)
        pending = []
        for lo, hi in reversed(list(zip(edges[:-1], edges[1:]))):
            pending.append((lo, hi, self._rule(lo, hi)))
        accepted = []
        converged = True
        singular_floor = abs(width) * 2.0 ** -10
        while pending:
            lo, hi, whole = pending.pop()
            mid = 0.5 * (lo + hi)
            if whole is None and abs(hi - lo) <= singular_floor:
                value = self.fallback(lo, hi)
                accepted.append((lo, value, value, 0.0))
                continue
            left = self._rule(lo, mid)
            right = self._rule(mid, hi)
            if whole is None or left is None or right is None:
                pending.append((mid, hi, right))
                pending.append((lo, mid, left))
                continue
            refined = left + right
            err = abs(refined - whole)
            if err <= self.tol * abs(hi - lo) / abs(width) or abs(hi - lo) <= min_width:
                accepted.append((lo, whole, refined, err))
            elif len(accepted) + len(pending) + 2 > self.max_panels:
                converged = False
                accepted.append((lo, whole, refined, err))
            else:
                pending.append((mid, hi, right))
                pending.append((lo, mid, left))
        accepted.sort(key=lambda each: each[0])
        value = complex_fsum(each[2] for each in accepted)
        coarse = complex_fsum(each[1] for each in accepted)
        achieved = math.fsum(each[3] for each in accepted)
        if not converged:
            log.debug("Panel cap reached with achieved error " + str(achieved))
        return QuadratureResult(value, coarse, len(accepted), converged, achieved)


def tanh_sinh(func, lo, hi):
    """
    Integrate a scalar real function with an endpoint singularity by the tanh-sinh rule

    :param func: callable mapping a float to a real value
    :return: integral as float
    """
    ctx = mpmath.MPContext()
    return float(ctx.quad(lambda x: ctx.mpf(func(float(x))), [lo, hi], method='tanh-sinh'))
