import logging
import math
import numbers

import numpy as np
from scipy import stats

from .constants import MATCH_TOL, THETA, THETA_PRIME, LIMIT_SIGMA, LIMIT_TOL, INFINITY, KIND_POLE, DISTINCT, \
    IDENTICAL, INCONCLUSIVE
from .counting import ZeroRecord, count_in_disk, locate_values
from .engine.errors import CustomException, InsufficientGrid, HypothesisViolation, InvalidArgument
from .engine.workers import parallel_map
from .oracle import quotient_oracle, difference_oracle

log = logging.getLogger(__name__)

MIN_GRID_POINTS = 8
AGREEMENT_SAMPLES = 64
AGREEMENT_TOL = 1e-8


class AmbiguousMatch(CustomException):
    pass


def _as_pairs(zeros):
    pairs = []
    for z in zeros:
        if isinstance(z, ZeroRecord):
            if z.kind == KIND_POLE:
                raise InvalidArgument("pole records cannot be matched as zeros: " + repr(z))
            pairs.append((z.position, z.multiplicity))
        elif isinstance(z, numbers.Number):
            pairs.append((complex(z), 1))
        else:
            position, multiplicity = z
            pairs.append((complex(position), int(multiplicity)))
    return pairs


def _grid(T):
    if isinstance(T, numbers.Real):
        return [float(T)]
    grid = [float(t) for t in T]
    if not grid or any(t <= 0 for t in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidArgument("T grid must be positive and strictly increasing, got " + str(grid))
    return grid


def _slope(x, y):
    if len(x) < 2:
        return math.nan, math.nan
    fit = stats.linregress(x, y)
    return float(fit.slope), 2.0 * float(fit.stderr)


class SymDiffReport(object):
    """
    Symmetric difference D(T) of two zero multisets on a T grid

    :ivar T_grid: radii
    :ivar D_values: D(T) per radius
    :ivar matched_pairs: (position, m_F, m_G) for zeros present in both lists
    :ivar unmatched_F: (position, m) of zeros of F only
    :ivar unmatched_G: (position, m) of zeros of G only
    :ivar slope: least-squares slope of D against T
    :ivar slope_band: two standard errors of the slope
    :ivar n_F: zero count of F per radius
    :ivar n_G: zero count of G per radius
    """

    def __init__(self, T_grid, D_values, matched_pairs, unmatched_F, unmatched_G, slope, slope_band, n_F, n_G):
        self.T_grid = T_grid
        self.D_values = D_values
        self.matched_pairs = matched_pairs
        self.unmatched_F = unmatched_F
        self.unmatched_G = unmatched_G
        self.slope = slope
        self.slope_band = slope_band
        self.n_F = n_F
        self.n_G = n_G

    def to_dict(self):
        return {
            "T": list(self.T_grid),
            "D": list(self.D_values),
            "n_F": list(self.n_F),
            "n_G": list(self.n_G),
            "slope": None if math.isnan(self.slope) else self.slope,
            "slope_band": None if math.isnan(self.slope_band) else self.slope_band,
            "matched": len(self.matched_pairs),
            "unmatched_F": len(self.unmatched_F),
            "unmatched_G": len(self.unmatched_G),
        }

    def __repr__(self):
        return "SymDiffReport(T=%r, D=%r, slope=%r)" % (self.T_grid, self.D_values, self.slope)


def symmetric_difference(zerosF, zerosG, T, match_tol=MATCH_TOL):
    """
    D_{F,G}(T) = sum |m_F(rho) - m_G(rho)| over the zeros rho of FG with |rho| <= T

    Zeros closer than match_tol are the same zero; a zero with two candidates
    within match_tol is an error.

    :param zerosF: ZeroRecord list, (position, multiplicity) pairs or complex numbers
    :param zerosG: same for G
    :param T: radius or increasing list of radii
    :param match_tol: matching distance (optional, default: 1e-6)
    :rtype: SymDiffReport
    :raises AmbiguousMatch: when a zero has more than one partner within match_tol

    :example:
        >>> symmetric_difference([(1j, 2)], [(1j, 1)], 5).D_values
        [1]
    """
    T_grid = _grid(T)
    T_max = T_grid[-1]
    F = [(p, m) for p, m in _as_pairs(zerosF) if abs(p) <= T_max]
    G = [(p, m) for p, m in _as_pairs(zerosG) if abs(p) <= T_max]
    matched, unmatched_F, unmatched_G = [], [], []
    if F and G:
        pf = np.array([p for p, _ in F])
        pg = np.array([p for p, _ in G])
        close = np.abs(pf[:, None] - pg[None, :]) <= match_tol
        rows = np.sum(close, axis=1)
        cols = np.sum(close, axis=0)
        if np.any(rows > 1) or np.any(cols > 1):
            where = pf[rows > 1] if np.any(rows > 1) else pg[cols > 1]
            raise AmbiguousMatch("more than one zero within " + str(match_tol) + " of " + str(where[0]) +
                                 ", use a smaller match tolerance or refine the zeros")
        for i, j in zip(*np.nonzero(close)):
            matched.append((0.5 * (F[i][0] + G[j][0]), F[i][1], G[j][1]))
        used_F, used_G = set(np.nonzero(rows)[0]), set(np.nonzero(cols)[0])
        unmatched_F = [F[i] for i in range(len(F)) if i not in used_F]
        unmatched_G = [G[j] for j in range(len(G)) if j not in used_G]
    else:
        unmatched_F, unmatched_G = list(F), list(G)
    contributions = [(abs(p), abs(mf - mg)) for p, mf, mg in matched]
    contributions.extend((abs(p), m) for p, m in unmatched_F)
    contributions.extend((abs(p), m) for p, m in unmatched_G)
    D_values = [sum(c for r, c in contributions if r <= t) for t in T_grid]
    n_F = [sum(m for p, m in F if abs(p) <= t) for t in T_grid]
    n_G = [sum(m for p, m in G if abs(p) <= t) for t in T_grid]
    slope, band = _slope(T_grid, D_values)
    report = SymDiffReport(T_grid, D_values, matched, unmatched_F, unmatched_G, slope, band, n_F, n_G)
    log.debug(repr(report))
    return report


def _check_grid(T_grid):
    if len(T_grid) < MIN_GRID_POINTS or T_grid[-1] < 10.0 * T_grid[0] * (1.0 - 1e-9):
        raise InsufficientGrid("linear growth needs at least " + str(MIN_GRID_POINTS) +
                               " radii spanning a decade, got " + str(T_grid))


def _lower_envelope(T_grid, values):
    upper = len(T_grid) // 2
    return min(v / t for t, v in zip(T_grid[upper:], values[upper:]))


def linear_growth_verdict(report, theta=THETA):
    """
    Heuristic test of D(T) > A T for large T

    :return: (verdict, A) with A the minimum of D(T)/T over the upper half of the grid
    :rtype: tuple
    :raises InsufficientGrid: with fewer than 8 radii or less than a decade
    """
    _check_grid(report.T_grid)
    A = _lower_envelope(report.T_grid, report.D_values)
    return A > theta, A


def default_grid(T_max, points=MIN_GRID_POINTS):
    """
    Geometric grid of ``points`` radii from T_max/10 to T_max
    """
    return [float(t) for t in np.geomspace(T_max / 10.0, T_max, points)]


def _check_limit(F, G):
    sigma = min(LIMIT_SIGMA, F.validity_radius, G.validity_radius)
    top, _ = F.evaluate(sigma)
    bottom, _ = G.evaluate(sigma)
    ratio = top / bottom if bottom != 0 else math.inf
    if not abs(ratio - 1.0) <= LIMIT_TOL:
        raise HypothesisViolation("F/G must tend to 1 as Re(s) -> +inf, but F/G = " + str(ratio) + " at s = " +
                                  str(sigma))
    for oracle in (F, G):
        if oracle.declared_order is not None and oracle.declared_order >= 2:
            raise HypothesisViolation(oracle.name + " has declared order " + str(oracle.declared_order) +
                                      ", the uniqueness test needs order < 2")


def _pointwise_agreement(F, G, radius):
    ring = radius * np.exp(2j * math.pi * np.arange(AGREEMENT_SAMPLES) / AGREEMENT_SAMPLES)
    f, ef = F.evaluate_many(ring)
    g, eg = G.evaluate_many(ring)
    return bool(np.all(np.abs(f - g) <= AGREEMENT_TOL * np.maximum(1.0, np.abs(f)) + ef + eg))


class UniquenessResult(object):
    """
    Verdict of the uniqueness test with the data behind it

    :ivar verdict: 'distinct', 'identical (numerically)' or 'inconclusive'
    :ivar report: symmetric difference of the located zeros
    :ivar quotient_counts: n(T, 0; F/G) + n(T, inf; F/G) per radius
    :ivar A_difference: lower envelope of D(T)/T
    :ivar A_quotient: lower envelope of the quotient counts over T
    """

    def __init__(self, verdict, report, quotient_counts, A_difference, A_quotient):
        self.verdict = verdict
        self.report = report
        self.quotient_counts = quotient_counts
        self.A_difference = A_difference
        self.A_quotient = A_quotient

    def to_dict(self):
        result = self.report.to_dict()
        result.update({"verdict": self.verdict, "quotient_counts": list(self.quotient_counts),
                       "A_difference": self.A_difference, "A_quotient": self.A_quotient})
        return result


def uniqueness_details(F, G, T_max, T_grid=None, theta=THETA, match_tol=MATCH_TOL):
    """
    Uniqueness test for two functions with F/G -> 1, reporting the data behind the verdict

    :rtype: UniquenessResult
    :raises HypothesisViolation: when F/G does not tend to 1 or an order of 2 or more is declared
    """
    _check_limit(F, G)
    T_grid = default_grid(T_max) if T_grid is None else _grid(T_grid)
    _check_grid(T_grid)
    zerosF = locate_values(F, T_grid[-1], 0.0)
    zerosG = locate_values(G, T_grid[-1], 0.0)
    report = symmetric_difference(zerosF, zerosG, T_grid, match_tol)
    q = quotient_oracle(F, G)

    def quotient_count(t):
        return count_in_disk(q, t, 0.0).count + count_in_disk(q, t, INFINITY).count

    quotient_counts = parallel_map(quotient_count, T_grid)
    A_difference = _lower_envelope(T_grid, report.D_values)
    A_quotient = _lower_envelope(T_grid, quotient_counts)
    if A_difference > theta or A_quotient > theta:
        verdict = DISTINCT
    elif not any(report.D_values) and not any(quotient_counts) and _pointwise_agreement(F, G, 0.5 * T_grid[-1]):
        verdict = IDENTICAL
    else:
        verdict = INCONCLUSIVE
    log.info(F.name + " vs " + G.name + ": " + verdict + " (A=" + str(A_difference) + ")")
    return UniquenessResult(verdict, report, quotient_counts, A_difference, A_quotient)


def uniqueness_check(F, G, T_max, T_grid=None, theta=THETA, match_tol=MATCH_TOL):
    """
    Decide whether F and G differ from the growth of their zero symmetric difference

    :param F: first oracle
    :param G: second oracle, F/G must tend to 1 as Re(s) -> +inf
    :param T_max: largest radius
    :param T_grid: radii (optional, default: 8 geometric radii from T_max/10 to T_max)
    :return: 'distinct', 'identical (numerically)' or 'inconclusive'
    :rtype: str

    :example:
        >>> F = as_oracle(make_sum([(0, 1), (math.log(4), 2)]))
        >>> G = as_oracle(make_sum([(0, 1), (math.log(9), 3)]))
        >>> uniqueness_check(F, G, 40)
        'distinct'
    """
    return uniqueness_details(F, G, T_max, T_grid, theta, match_tol).verdict


class ExceptionalSetEstimate(object):
    """
    Counting function of the zeros where F and G disagree

    :ivar n_E: excess multiplicities per radius
    :ivar o_r_verdict: heuristic verdict that n_E(T) = o(T)
    """

    def __init__(self, T_grid, n_E, slope, o_r_verdict):
        self.T_grid = T_grid
        self.n_E = n_E
        self.slope = slope
        self.o_r_verdict = o_r_verdict

    def to_dict(self):
        return {"T": list(self.T_grid), "n_E": list(self.n_E), "slope": self.slope, "o_r": self.o_r_verdict}


def enough_common_zeros(zerosF, zerosG, T_grid, theta_prime=THETA_PRIME, match_tol=MATCH_TOL):
    """
    Heuristic test that F and G share all but o(T) of their zeros

    n_E counts the excess multiplicities sum |m_F - m_G|, so it coincides with D.
    The verdict needs a least-squares slope below theta_prime and a nonincreasing
    n_E(T)/T over the upper half of the grid.

    :rtype: ExceptionalSetEstimate
    """
    report = symmetric_difference(zerosF, zerosG, T_grid, match_tol)
    n_E = list(report.D_values)
    upper = len(report.T_grid) // 2
    ratios = [v / t for t, v in zip(report.T_grid[upper:], n_E[upper:])]
    nonincreasing = all(b <= a + 1e-12 for a, b in zip(ratios, ratios[1:]))
    slope = 0.0 if math.isnan(report.slope) else report.slope
    verdict = slope < theta_prime and nonincreasing
    return ExceptionalSetEstimate(report.T_grid, n_E, slope, verdict)


def shared_value_check(F, G, a, T_max, T_grid=None, theta=THETA, match_tol=MATCH_TOL):
    """
    Uniqueness test applied to F - a and G - a

    :rtype: str
    :raises HypothesisViolation: when (F - a)/(G - a) does not tend to 1
    """
    return uniqueness_check(difference_oracle(F, a), difference_oracle(G, a), T_max, T_grid, theta, match_tol)
