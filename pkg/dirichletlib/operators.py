import logging

from .constants import TAU, INFINITY
from .counting import count_in_disk
from .engine.errors import InvalidArgument, ValidityExceeded, HypothesisViolation
from .oracle import quotient_oracle, shift_oracle

log = logging.getLogger(__name__)


def lambda_apply(oracle, tau=TAU):
    """
    Difference operator (Lambda f)(s) = f(s + tau) / f(s)

    The result is a quotient oracle whose validity radius is that of f minus tau.

    :param oracle: the function
    :param tau: positive step (optional, default: 0.1)
    :rtype: MeromorphicOracle
    :raises ValidityExceeded: when tau exhausts the validity radius

    :example:
        >>> g = lambda_apply(exp_polynomial_oracle([0, 1]), 1.0)    # e^s
        >>> round(g.evaluate(3 + 2j)[0].real, 9)
        2.718281828
    """
    if not tau > 0:
        raise InvalidArgument("tau must be positive, got " + repr(tau))
    if oracle.validity_radius <= tau:
        raise ValidityExceeded("tau " + str(tau) + " exhausts the validity radius of " + oracle.name)
    result = quotient_oracle(shift_oracle(oracle, tau), oracle)
    log.debug("Lambda applied to " + oracle.name + " with tau " + str(tau))
    return result


def lambda_iterate(oracle, tau=TAU, d=1):
    """
    d-fold iterate of the difference operator

    :param d: number of applications, d >= 1
    :rtype: MeromorphicOracle
    """
    if int(d) != d or d < 1:
        raise InvalidArgument("the number of iterations must be a positive integer, got " + repr(d))
    result = oracle
    for _ in range(int(d)):
        result = lambda_apply(result, tau)
    return result


def check_tau(oracle, tau, d):
    """
    Check that f has neither zeros nor poles in |s| <= 2 d tau

    :raises HypothesisViolation: when a zero or pole is found there
    """
    radius = 2.0 * d * tau
    zeros, certified = count_in_disk(oracle, radius, 0.0)
    poles, certified_poles = count_in_disk(oracle, radius, INFINITY)
    if not (certified and certified_poles):
        raise HypothesisViolation("could not certify that " + oracle.name + " is zero and pole free in |s| <= " +
                                  str(radius))
    if zeros or poles:
        raise HypothesisViolation(oracle.name + " has " + str(zeros) + " zeros and " + str(poles) +
                                  " poles in |s| <= " + str(radius) + ", choose a smaller tau")
    return True
