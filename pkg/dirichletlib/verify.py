import logging
import math
import time

import numpy as np
from scipy import stats

from .almost_periodic import translation_numbers, rouche_recurrence, confirm_translates, seed_disk_for
from .cartan import cartan_cover, verify_cover, annulus_point_for
from .constants import (THETA, DIVERGENCE_SLOPE, BRANCH_LINEAR, BRANCH_DIVERGENT, BRANCH_DEGENERATE,
                        ROLE_POSITIVE, ROLE_CONTROL, ROLE_PAIR, INFINITY, DISTINCT, TAU)
from .counting import CountingTable, build_counting_table, count_in_disk, locate_values
from .engine.errors import CustomException, InsufficientGrid, InvalidArgument, BoundViolation
from .jensen import jensen_residual, poisson_jensen_residual
from .operators import lambda_apply, lambda_iterate
from .oracle import as_oracle, geometric_oracle, zeta_oracle, exp_polynomial_oracle
from .product import growth_bound_check
from .series import make_sum
from .symdiff import symmetric_difference, uniqueness_check

log = logging.getLogger(__name__)

MIN_GRID_POINTS = 8
CLOSED_FORM_SLACK = 1e-12
LN2 = math.log(2)


def _vertical_lattice(x, step, shift):
    """
    Closed form of the points x + i(shift + k*step), k integer, inside |s| <= r
    """

    def points(r):
        r = r * (1.0 + CLOSED_FORM_SLACK)
        if abs(x) > r:
            return []
        height = math.sqrt(r * r - x * x)
        low = int(math.ceil((-height - shift) / step))
        high = int(math.floor((height - shift) / step))
        return [complex(x, shift + k * step) for k in range(low, high + 1)]

    return points


def _gaussian_integers(r):
    r = r * (1.0 + CLOSED_FORM_SLACK)
    top = int(math.floor(r))
    return [complex(m, n) for m in range(-top, top + 1) for n in range(-top, top + 1)
            if (m or n) and m * m + n * n <= r * r]


def _nothing(r):
    return []


class CatalogEntry(object):
    """
    A catalog function with its closed forms and the hypotheses it satisfies

    :param name: catalog name
    :param factory: callable returning the oracle, None for entries without one
    :param role: 'positive-example', 'negative-control' or 'counterexample-pair member'
    :param closed_form_zeros: callable r -> zeros in |s| <= r, repeated for multiplicity (optional)
    :param closed_form_poles: callable r -> poles in |s| <= r (optional)
    :param declared_order: order of growth, metadata
    :param hypothesis_flags: dict with keys nonzero_limit, finite_order, nontrivial
    :param series: the exponential sum behind the entry (optional)
    :param expected_slope: asymptotic value of (n_zero + n_pole)/r (optional)
    :param metadata_only: the entry is listed but never evaluated
    """

    def __init__(self, name, factory, role, closed_form_zeros=None, closed_form_poles=None, declared_order=None,
                 hypothesis_flags=None, series=None, expected_slope=None, metadata_only=False, note=""):
        self.name = name
        self.factory = factory
        self.role = role
        self.closed_form_zeros = closed_form_zeros
        self.closed_form_poles = closed_form_poles
        self.declared_order = declared_order
        self.hypothesis_flags = hypothesis_flags or {"nonzero_limit": True, "finite_order": True,
                                                     "nontrivial": True}
        self.series = series
        self.expected_slope = expected_slope
        self.metadata_only = metadata_only
        self.note = note

    @property
    def has_closed_form(self):
        return self.closed_form_zeros is not None

    @property
    def hypotheses_hold(self):
        return all(self.hypothesis_flags.values())

    def oracle(self):
        if self.factory is None:
            raise InvalidArgument("catalog entry " + self.name + " has no oracle")
        return self.factory()

    def to_dict(self):
        return {
            "name": self.name,
            "role": self.role,
            "declared_order": self.declared_order,
            "hypothesis_flags": dict(self.hypothesis_flags),
            "closed_form": self.has_closed_form,
            "metadata_only": self.metadata_only,
            "note": self.note,
        }

    def __repr__(self):
        return "CatalogEntry(%r, role=%r)" % (self.name, self.role)


def _sum_entry(name, terms, role, zeros, flags=None, slope=None, note=""):
    series = make_sum(terms, declared_order=1.0)
    return CatalogEntry(name, lambda: as_oracle(series), role, zeros, _nothing, 1.0, flags, series, slope,
                        note=note)


def catalog(include_zeta=True):
    """
    Built-in catalog of test functions

    :param include_zeta: list the zeta function (optional, default: True)
    :rtype: list of CatalogEntry

    :example:
        >>> [entry.name for entry in catalog(False)][:3]
        ['1+2^-s', 'e^-s', '1/(1-e^-s)']
    """
    entries = [
        _sum_entry("1+2^-s", [(0, 1), (LN2, 1)], ROLE_POSITIVE,
                   _vertical_lattice(0.0, 2.0 * math.pi / LN2, math.pi / LN2), slope=LN2 / math.pi,
                   note="zero-free limit 1, zeros on the imaginary axis"),
        _sum_entry("e^-s", [(1, 1)], ROLE_CONTROL, _nothing,
                   flags={"nonzero_limit": False, "finite_order": True, "nontrivial": False},
                   note="tends to 0 as Re(s) -> +inf, no zeros or poles"),
        CatalogEntry("1/(1-e^-s)", geometric_oracle, ROLE_POSITIVE, _nothing,
                     _vertical_lattice(0.0, 2.0 * math.pi, 0.0), 1.0, expected_slope=1.0 / math.pi,
                     note="no zeros, poles at 2 pi i k"),
        _sum_entry("1-e^-s", [(0, 1), (1, -1)], ROLE_POSITIVE, _vertical_lattice(0.0, 2.0 * math.pi, 0.0),
                   slope=1.0 / math.pi, note="no poles, zeros at 2 pi i k"),
        _sum_entry("1+2*4^-s", [(0, 1), (math.log(4), 2)], ROLE_PAIR,
                   _vertical_lattice(0.5, 2.0 * math.pi / math.log(4), math.pi / math.log(4)),
                   slope=math.log(4) / math.pi),
        _sum_entry("1+3*9^-s", [(0, 1), (math.log(9), 3)], ROLE_PAIR,
                   _vertical_lattice(0.5, 2.0 * math.pi / math.log(9), math.pi / math.log(9)),
                   slope=math.log(9) / math.pi),
        CatalogEntry("exp(e^-s)", None, ROLE_CONTROL, declared_order=math.inf,
                     hypothesis_flags={"nonzero_limit": True, "finite_order": False, "nontrivial": True},
                     metadata_only=True, note="infinite order and zero-free, listed only"),
        CatalogEntry("gaussian-lattice", None, ROLE_POSITIVE, _gaussian_integers, _nothing, 2.0,
                     note="synthetic zero set m + n i, counts from the closed form"),
    ]
    if include_zeta:
        entries.append(CatalogEntry("zeta", zeta_oracle, ROLE_POSITIVE, declared_order=1.0,
                                    note="pole at 1, counted up to |s| = 30"))
    return entries


def get_entry(name, include_zeta=True):
    for entry in catalog(include_zeta):
        if entry.name == name:
            return entry
    raise InvalidArgument("no catalog entry named " + repr(name))


def _closed_form_table(entry, r_grid):
    table = CountingTable(0.0, {"oracle": entry.name, "closed_form": True})
    for r in r_grid:
        zeros = entry.closed_form_zeros(r)
        poles = entry.closed_form_poles(r) if entry.closed_form_poles else []
        table.add_row(r, len(zeros), len(poles), math.fsum(math.log(r / abs(w)) for w in zeros),
                      math.fsum(math.log(r / abs(w)) for w in poles))
    return table


def counting_table(entry, r_grid):
    """
    Counting table of a catalog entry, cross-checked against its closed forms

    Rows whose counts disagree with the closed form are listed in
    ``table.metadata['closed_form_mismatches']``.

    :rtype: CountingTable
    :raises InvalidArgument: for metadata-only entries
    """
    if entry.metadata_only:
        raise InvalidArgument("catalog entry " + entry.name + " is metadata only")
    r_grid = [float(r) for r in r_grid]
    if entry.factory is None:
        return _closed_form_table(entry, r_grid)
    table = build_counting_table(entry.oracle(), r_grid)
    mismatches = []
    if entry.has_closed_form:
        for r, n_zero, n_pole in zip(table.radii, table.n_zero, table.n_pole):
            zeros = len(entry.closed_form_zeros(r))
            poles = len(entry.closed_form_poles(r)) if entry.closed_form_poles else 0
            if (zeros, poles) != (n_zero, n_pole):
                mismatches.append([r, n_zero, zeros, n_pole, poles])
                log.error(entry.name + ": counts (" + str(n_zero) + ", " + str(n_pole) + ") at r=" + str(r) +
                          " disagree with the closed form (" + str(zeros) + ", " + str(poles) + ")")
    table.metadata["closed_form_mismatches"] = mismatches
    return table


class DichotomyReport(object):
    """
    Which alternative of the counting dichotomy a catalog entry shows on a grid

    :ivar table: the counting table
    :ivar A_lower: min of (n_zero + n_pole)/r over the upper half of the grid
    :ivar tail_increments: n(t_j) (1/(2 t_j^2) - 1/(2 t_{j+1}^2)) per grid interval
    :ivar tail_integral_partial: partial sums of the increments
    :ivar tail_slope: least-squares slope of log(increment) against log(t) on the upper half
    :ivar branch: 'linear-lower-bound', 'divergent-tail-suggestive' or 'degenerate'
    :ivar hypothesis_violating: the entry does not satisfy every hypothesis
    """

    def __init__(self, entry, table, A_lower, tail_increments, tail_integral_partial, tail_slope, branch, theta):
        self.entry = entry
        self.table = table
        self.A_lower = A_lower
        self.tail_increments = tail_increments
        self.tail_integral_partial = tail_integral_partial
        self.tail_slope = tail_slope
        self.branch = branch
        self.theta = theta
        self.hypothesis_violating = not entry.hypotheses_hold

    @property
    def label(self):
        if self.hypothesis_violating:
            return self.branch + " (hypothesis-violating control)"
        return self.branch

    def to_dict(self):
        return {
            "entry": self.entry.name,
            "A_lower": self.A_lower,
            "theta": self.theta,
            "tail_increments": list(self.tail_increments),
            "tail_integral_partial": list(self.tail_integral_partial),
            "tail_slope": None if math.isnan(self.tail_slope) else self.tail_slope,
            "branch": self.branch,
            "label": self.label,
        }

    def __repr__(self):
        return "DichotomyReport(%s, A_lower=%.4g, branch=%s)" % (self.entry.name, self.A_lower, self.label)


def _check_grid(r_grid):
    if len(r_grid) < MIN_GRID_POINTS or r_grid[-1] < 10.0 * r_grid[0] * (1.0 - 1e-9):
        raise InsufficientGrid("the dichotomy check needs at least " + str(MIN_GRID_POINTS) +
                               " radii spanning a decade, got " + str(r_grid))


def dichotomy_check(entry, r_grid, theta=THETA):
    """
    Measure the lower envelope of (n(r, 0) + n(r, inf))/r and the tail of int n(t)/t^3 dt

    A tail whose increments decay more slowly than t^{-1/2} suggests a divergent
    integral; otherwise an envelope of at least theta is a linear lower bound.
    Entries of order below 2 that satisfy every hypothesis must show the linear bound.

    :param entry: catalog entry
    :param r_grid: at least 8 increasing radii spanning a decade
    :param theta: threshold of the linear bound (optional, default: 0.05)
    :rtype: DichotomyReport
    :raises InsufficientGrid: on a short grid
    :raises BoundViolation: when an order < 2 entry satisfying the hypotheses falls below theta
    """
    r_grid = [float(r) for r in r_grid]
    _check_grid(r_grid)
    table = counting_table(entry, r_grid)
    totals = [z + p for z, p in zip(table.n_zero, table.n_pole)]
    upper = len(r_grid) // 2
    A_lower = min(n / r for r, n in zip(r_grid[upper:], totals[upper:]))
    increments = [n * (0.5 / t ** 2 - 0.5 / u ** 2) for n, t, u in zip(totals, r_grid, r_grid[1:])]
    partial = list(np.cumsum(increments)) if increments else []
    tail = [(math.log(t), math.log(inc)) for t, inc in zip(r_grid[upper:], increments[upper:]) if inc > 0]
    if len(tail) >= 2:
        tail_slope = float(stats.linregress([x for x, _ in tail], [y for _, y in tail]).slope)
    else:
        tail_slope = math.nan
    if not math.isnan(tail_slope) and tail_slope > DIVERGENCE_SLOPE:
        branch = BRANCH_DIVERGENT
    elif A_lower >= theta:
        branch = BRANCH_LINEAR
    else:
        branch = BRANCH_DEGENERATE
    report = DichotomyReport(entry, table, A_lower, increments, [float(v) for v in partial], tail_slope, branch,
                             theta)
    log.info(repr(report))
    order = entry.declared_order
    if order is not None and order < 2 and entry.hypotheses_hold and A_lower < theta:
        log.error(entry.name + ": order " + str(order) + " entry has A_lower " + str(A_lower) + " below " +
                  str(theta))
        raise BoundViolation(entry.name + " satisfies every hypothesis with order " + str(order) +
                             " but (n(r,0) + n(r,inf))/r only reaches " + str(A_lower))
    return report


def reduction_check(entry, r_grid):
    """
    Check that f and e^{lambda_1 s} f have the same counting table and that the
    normalised sum tends to a_1

    :param entry: catalog entry backed by a sum, or the ExponentialSum itself
    :return: None for trivial sums, otherwise whether both checks pass
    """
    series = getattr(entry, "series", entry)
    if series is None:
        raise InvalidArgument("the reduction check needs an exponential sum")
    if series.trivial:
        log.info("Trivial sum " + repr(series) + " has no zeros or poles, reduction skipped")
        return None
    normalized = series.normalized()
    first = build_counting_table(as_oracle(series), r_grid)
    second = build_counting_table(as_oracle(normalized), r_grid)
    same = first.n_zero == second.n_zero and first.n_pole == second.n_pole
    limit = normalized.limit_at_plus_infinity
    return bool(same and limit is not None and abs(limit - series.leading_coefficient) < 1e-12)


class SuiteCheck(object):
    def __init__(self, name, passed, detail, seconds):
        self.name = name
        self.passed = passed
        self.detail = detail
        self.seconds = seconds

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}

    def __repr__(self):
        return "SuiteCheck(%s, %s)" % (self.name, "passed" if self.passed else "FAILED")


class SuiteResult(object):
    """
    Named checks of the verification suite

    :ivar checks: list of SuiteCheck
    :ivar tables: counting table per catalog entry
    :ivar reports: dichotomy report per catalog entry
    """

    def __init__(self, grid, seed):
        self.grid = grid
        self.seed = seed
        self.checks = []
        self.tables = {}
        self.reports = {}

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def run(self, name, func):
        """
        Run one check; func returns (passed, detail). Library errors fail the check.
        """
        start = time.time()
        try:
            passed, detail = func()
        except CustomException as e:
            log.error("Check " + name + " raised " + repr(e))
            passed, detail = False, repr(e)
        check = SuiteCheck(name, bool(passed), detail, time.time() - start)
        self.checks.append(check)
        log.info(repr(check) + ": " + str(detail))
        return check

    def to_dict(self):
        return {"grid": list(self.grid), "seed": self.seed, "passed": self.passed,
                "checks": [check.to_dict() for check in self.checks]}


def _variation(values):
    values = np.asarray(values)
    return float(np.max(np.abs(values - values[0])) / abs(values[0]))


def _disk_samples(rng, count, radius):
    return radius * np.sqrt(rng.uniform(size=count)) * np.exp(2j * math.pi * rng.uniform(size=count))


def _check_entry(result, entry, grid, theta):
    def table_check():
        table = counting_table(entry, grid)
        result.tables[entry.name] = table
        mismatches = table.metadata.get("closed_form_mismatches", [])
        return not mismatches and table.is_monotone(), {"n_zero": table.n_zero, "n_pole": table.n_pole,
                                                         "mismatches": mismatches}

    def dichotomy():
        report = dichotomy_check(entry, grid, theta)
        result.reports[entry.name] = report
        if entry.hypotheses_hold and entry.declared_order is not None and entry.declared_order < 2:
            ok = report.branch == BRANCH_LINEAR
            if entry.expected_slope is not None:
                ok = ok and abs(report.table.ratios[-1] - entry.expected_slope) <= 0.15 * entry.expected_slope
        elif entry.hypotheses_hold:
            ok = report.branch == BRANCH_DIVERGENT
        else:
            ok = True
        return ok, report.to_dict()

    result.run("table:" + entry.name, table_check)
    result.run("dichotomy:" + entry.name, dichotomy)
    if entry.series is not None and not entry.series.trivial:
        result.run("reduction:" + entry.name, lambda: (reduction_check(entry, grid[:4]), None))


def _jensen_checks(result):
    def check():
        residuals = {}
        for name in ("1+2^-s", "1-e^-s", "1/(1-e^-s)", "1+2*4^-s"):
            oracle = get_entry(name, False).oracle()
            for R in (2.0, 3.0, 5.0):
                residuals[name + "@" + str(R)] = jensen_residual(oracle, R)
            residuals[name + "@poisson"] = poisson_jensen_residual(oracle, 0.3 + 0.2j, 3.0)
        return max(residuals.values()) < 1e-7, residuals

    result.run("jensen", check)


def _localisation_check(result, r_max):
    def check():
        detail = {}
        for name in ("1+2^-s", "1-e^-s", "1+3*9^-s"):
            oracle = get_entry(name, False).oracle()
            records = locate_values(oracle, r_max)
            detail[name] = [sum(rec.multiplicity for rec in records), count_in_disk(oracle, r_max).count]
        return all(n == c for n, c in detail.values()), detail

    result.run("localisation", check)


def _symdiff_checks(result):
    F = get_entry("1+2*4^-s", False).oracle()
    G = get_entry("1+3*9^-s", False).oracle()

    def difference():
        zf = locate_values(F, 40.0)
        zg = locate_values(G, 40.0)
        at20 = symmetric_difference(zf, zg, 20.0).D_values[0]
        report = symmetric_difference(zf, zg, [float(t) for t in range(10, 41)])
        theory = (math.log(4) + math.log(9)) / math.pi
        return at20 == 22 and abs(report.slope - theory) <= 0.1 * theory, {"D(20)": at20, "slope": report.slope}

    result.run("symdiff", difference)
    result.run("uniqueness", lambda: (uniqueness_check(F, G, 40.0) == DISTINCT, None))


def _lambda_checks(result, rng):
    def check():
        first = lambda_iterate(exp_polynomial_oracle([0, 1]), 1.0, 1)
        second = lambda_iterate(exp_polynomial_oracle([0, 0, 1]), 1.0, 2)
        v1, _ = first.evaluate_many(_disk_samples(rng, 100, 5.0))
        v2, _ = second.evaluate_many(_disk_samples(rng, 100, 2.0))
        limit, _ = lambda_apply(get_entry("1+2^-s", False).oracle(), TAU).evaluate(40.0)
        detail = {"first": _variation(v1), "second": _variation(v2), "limit": abs(limit - 1.0)}
        return detail["first"] < 1e-9 and detail["second"] < 1e-9 and detail["limit"] < 1e-10, detail

    result.run("lambda", check)


def _growth_sweep(result, rng):
    def check():
        violations = 0
        for _ in range(100):
            count = int(rng.integers(1, 21))
            zeros = (rng.uniform(1.0, 5.0, count) * np.exp(2j * math.pi * rng.uniform(size=count))).tolist()
            for s in _disk_samples(rng, 100, 10.0):
                if s == 0:
                    continue
                lhs, rhs = growth_bound_check(zeros, s)
                violations += lhs > rhs
        return violations == 0, {"violations": int(violations)}

    result.run("growth", check)


def _cartan_sweep(result, rng, seed):
    def sweep():
        bad = []
        for k in range(50):
            cover = cartan_cover(_disk_samples(rng, 20, 10.0), 1.0)
            _, violations = verify_cover(cover, 10000, seed + k)
            if violations or abs(cover.total_radius - 2.0) > 1e-12:
                bad.append(k)
        return not bad, {"failed_sets": bad}

    def annulus():
        detail = {}
        for entry in catalog(False):
            if entry.factory is None:
                continue
            picked = annulus_point_for(entry.oracle(), 32.0)
            detail[entry.name] = [picked.point.real, picked.point.imag, picked.regular]
        return all(v[2] for v in detail.values()), detail

    result.run("cartan", sweep)
    result.run("annulus", annulus)


def _recurrence_check(result):
    def check():
        series = make_sum([(0, 1), (LN2, 1), (math.log(3), 1)])
        scan = translation_numbers(series, 0.1, 200.0, 1e-3, sigma0=2.0)
        oracle = as_oracle(series)
        records = locate_values(oracle, 10.0)
        index = max(range(len(records)), key=lambda i: (records[i].position.real, records[i].position.imag))
        seed = seed_disk_for(records, index)
        candidates = translation_numbers(series, 0.5, 1000.0, 1e-3, sigma0=seed.center.real - seed.radius,
                                         scan_range=(0.0, 1000.0))
        report = rouche_recurrence(series, 0.0, seed, candidates.found)
        bad = confirm_translates(series, report)
        r = report.radii[-1]
        direct = count_in_disk(oracle, r).count
        ok = scan.relatively_dense and report.slope > 0 and not bad and report.n_lower[-1] <= direct
        return ok, {"failing_windows": scan.failing_windows, "slope": report.slope, "translates": len(report.omegas),
                    "n_lower": report.n_lower[-1], "n": direct}

    result.run("recurrence", check)


def _zeta_check(result):
    def check():
        zeta = zeta_oracle()
        zeros = count_in_disk(zeta, 30.0).count
        poles = count_in_disk(zeta, 30.0, INFINITY).count
        located = sum(rec.multiplicity for rec in locate_values(zeta, 30.0))
        return (zeros, poles, located) == (21, 1, 21), {"n_zero": zeros, "n_pole": poles, "located": located}

    result.run("zeta", check)


def run_suite(grid, seed=0, include_zeta=False, theta=THETA):
    """
    Run every verification check over the catalog

    :param grid: radius grid of the catalog tables, at least 8 radii spanning a decade
    :param seed: seed of the random sweeps (optional, default: 0)
    :param include_zeta: also count the zeta zeros in |s| <= 30 (optional, default: False)
    :rtype: SuiteResult
    """
    grid = [float(r) for r in grid]
    _check_grid(grid)
    rng = np.random.default_rng(seed)
    result = SuiteResult(grid, seed)
    for entry in catalog(False):
        if entry.metadata_only:
            continue
        _check_entry(result, entry, grid, theta)
    _jensen_checks(result)
    _localisation_check(result, grid[len(grid) // 2])
    _symdiff_checks(result)
    _lambda_checks(result, rng)
    _growth_sweep(result, rng)
    _cartan_sweep(result, rng, seed)
    _recurrence_check(result)
    if include_zeta:
        _zeta_check(result)
    log.info("Verification suite: " + str(len(result.checks) - len(result.failures)) + " of " +
             str(len(result.checks)) + " checks passed")
    return result
