import logging
import math

import numpy as np
from scipy import stats

from .constants import SCAN_RANGE, SCAN_CHUNK, SEED_SAMPLES
from .counting import count_in_disk
from .engine.errors import InvalidArgument, CertificationRefused
from .oracle import as_oracle, shift_oracle, ComplexDiskRegion

log = logging.getLogger(__name__)


def _weights(series, sigma0):
    """
    Term weights |a_n| e^{-mu_n sigma0} of the translation bound, mu_n the Dirichlet exponents
    """
    if series.tail_bound is not None:
        raise InvalidArgument("translation bounds need a finite sum")
    mu, coefficients = series.dirichlet_exponents
    if np.any(mu[coefficients != 0] < 0):
        raise InvalidArgument("translation bounds need nonnegative Dirichlet exponents, the sum is unbounded "
                              "as Re(s) -> +inf")
    return mu, np.abs(coefficients) * np.exp(-mu * sigma0)


def translation_bound(series, omegas, sigma0=0.0):
    """
    Term-wise bound of sup_{Re(s) >= sigma0} |f(s + i omega) - f(s)|

    B(omega) = sum |a_n| e^{-mu_n sigma0} |e^{-i mu_n omega} - 1|
             = sum |a_n| e^{-mu_n sigma0} 2|sin(mu_n omega / 2)|

    :param series: finite Dirichlet-form sum with nonnegative exponents
    :param omegas: array of real translations
    :rtype: numpy.ndarray

    :example:
        >>> f = make_sum([(0, 1), (math.log(2), 1)])
        >>> float(translation_bound(f, [2 * math.pi / math.log(2)])[0]) < 1e-12
        True
    """
    mu, weights = _weights(series, sigma0)
    omegas = np.asarray(omegas, dtype=float)
    return 2.0 * np.abs(np.sin(0.5 * np.multiply.outer(omegas, mu))) @ weights


class TranslationNumberSet(object):
    """
    epsilon-translation numbers found by a grid scan

    :ivar epsilon: the tolerance
    :ivar interval_length: window length l
    :ivar found: sorted array of grid points omega with B(omega) <= epsilon
    :ivar windows: list of (start, stop, hits) per window
    :ivar sigma0: the half-plane Re(s) >= sigma0 of the bound
    :ivar failing_windows: windows with no hit
    """

    def __init__(self, epsilon, interval_length, found, windows, sigma0, scan_range, scan_step):
        self.epsilon = epsilon
        self.interval_length = interval_length
        self.found = found
        self.windows = windows
        self.sigma0 = sigma0
        self.scan_range = scan_range
        self.scan_step = scan_step
        self.failing_windows = [(lo, hi) for lo, hi, hits in windows if hits == 0]

    @property
    def relatively_dense(self):
        return not self.failing_windows

    @property
    def representatives(self):
        """
        First hit of every window that has one
        """
        reps = []
        for lo, hi, hits in self.windows:
            if hits:
                reps.append(float(self.found[np.searchsorted(self.found, lo)]))
        return reps

    def to_dict(self):
        return {
            "epsilon": self.epsilon,
            "window": self.interval_length,
            "sigma0": self.sigma0,
            "range": list(self.scan_range),
            "step": self.scan_step,
            "count": int(self.found.size),
            "omega": [float(w) for w in self.found],
            "failing_windows": [[lo, hi] for lo, hi in self.failing_windows],
        }

    def __len__(self):
        return int(self.found.size)

    def __repr__(self):
        return "TranslationNumberSet(epsilon=%r, l=%r, found=%d, failing=%d)" % (
            self.epsilon, self.interval_length, self.found.size, len(self.failing_windows))


def translation_numbers(series, epsilon, window, scan_step, sigma0=0.0, scan_range=SCAN_RANGE):
    """
    Scan a uniform grid for epsilon-translation numbers of a finite sum

    Every grid point omega = start + k*step with B(omega) <= epsilon is returned;
    the scan range is split into consecutive windows of length ``window`` and the
    windows without a hit are reported.

    :param series: finite Dirichlet-form sum
    :type series: ExponentialSum
    :param epsilon: positive tolerance
    :param window: window length l
    :param scan_step: grid step
    :param sigma0: half-plane of the bound (optional, default: 0)
    :param scan_range: (start, stop) (optional, default: (0, 5000))
    :rtype: TranslationNumberSet

    :example:
        >>> tn = translation_numbers(make_sum([(0, 1), (math.log(2), 1)]), 1e-3, 20, 1e-3, scan_range=(0, 100))
        >>> tn.relatively_dense
        True
    """
    if not epsilon > 0 or not window > 0 or not scan_step > 0:
        raise InvalidArgument("epsilon, window and scan step must be positive")
    start, stop = float(scan_range[0]), float(scan_range[1])
    if stop <= start:
        raise InvalidArgument("scan range must be increasing, got " + str(scan_range))
    mu, weights = _weights(series, sigma0)
    total = int(math.floor((stop - start) / scan_step + 1e-9)) + 1
    hits = []
    for k0 in range(0, total, SCAN_CHUNK):
        omegas = start + scan_step * np.arange(k0, min(k0 + SCAN_CHUNK, total))
        bound = 2.0 * np.abs(np.sin(0.5 * np.multiply.outer(omegas, mu))) @ weights
        hits.append(omegas[bound <= epsilon])
    found = np.concatenate(hits) if hits else np.array([])
    windows = []
    count = int(math.floor((stop - start) / window + 1e-9))
    for j in range(count):
        lo, hi = start + j * window, start + (j + 1) * window
        inside = int(np.searchsorted(found, hi, side='left') - np.searchsorted(found, lo, side='left'))
        windows.append((lo, hi, inside))
    result = TranslationNumberSet(epsilon, window, found, windows, sigma0, (start, stop), scan_step)
    for lo, hi in result.failing_windows:
        log.warning("No " + str(epsilon) + "-translation number in the window [" + str(lo) + ", " + str(hi) +
                    "), epsilon may be too small for the scan resolution")
    log.info("Translation scan over " + str(total) + " grid points: " + repr(result))
    return result


class RecurrenceReport(object):
    """
    Solutions of f = a certified by translating a seed disk

    :ivar mu: certified lower bound of |f - a| on the seed circle
    :ivar seed_disk: the seed disk
    :ivar seed_count: number of solutions in the seed disk
    :ivar omegas: kept translations, the seed itself is omega = 0
    :ivar centers: centers of the certified translated disks
    :ivar radii: radius grid of the lower bounds
    :ivar n_lower: certified lower bound of n(r, a; f) per radius
    :ivar N_lower: certified lower bound of N(r, a; f) per radius
    :ivar slope: least-squares slope of N_lower against r
    """

    def __init__(self, mu, seed_disk, seed_count, omegas, radii, n_lower, N_lower, slope, slope_stderr, target):
        self.mu = mu
        self.seed_disk = seed_disk
        self.seed_count = seed_count
        self.omegas = omegas
        self.centers = [seed_disk.center + 1j * w for w in omegas]
        self.radii = radii
        self.n_lower = n_lower
        self.N_lower = N_lower
        self.slope = slope
        self.slope_stderr = slope_stderr
        self.target = target

    def to_dict(self):
        return {
            "mu": self.mu,
            "seed": self.seed_disk.to_list(),
            "seed_count": self.seed_count,
            "omega": list(self.omegas),
            "r": list(self.radii),
            "n_lower": list(self.n_lower),
            "N_lower": list(self.N_lower),
            "slope": self.slope,
        }

    def __repr__(self):
        return "RecurrenceReport(mu=%.3g, seed_count=%d, translates=%d, slope=%r)" % (
            self.mu, self.seed_count, len(self.omegas), self.slope)


def boundary_minimum(series, disk, a=0.0, samples=SEED_SAMPLES):
    """
    Certified lower bound of |f - a| on the circle of a disk

    The sampled minimum is lowered by a Lipschitz bound of f over half the sample spacing.

    :rtype: float
    """
    oracle = as_oracle(series)
    theta = 2.0 * math.pi * np.arange(samples) / samples
    ring = disk.center + disk.radius * np.exp(1j * theta)
    values, bounds = oracle.evaluate_many(ring)
    sampled = float(np.min(np.abs(values - a) - bounds))
    mu, coefficients = series.dirichlet_exponents
    sigma_low = disk.center.real - disk.radius
    sigma_high = disk.center.real + disk.radius
    lipschitz = float(np.sum(np.abs(coefficients) * np.abs(mu) *
                             np.maximum(np.exp(-mu * sigma_low), np.exp(-mu * sigma_high))))
    return sampled - lipschitz * math.pi * disk.radius / samples


def _separated(omegas, gap):
    kept = [0.0]
    for w in sorted(w for w in omegas if w > 0):
        if w - kept[-1] > gap:
            kept.append(w)
    low = 0.0
    for w in sorted((w for w in omegas if w < 0), reverse=True):
        if low - w > gap:
            kept.append(w)
            low = w
    return sorted(kept)


def rouche_recurrence(series, a, seed_disk, omegas, epsilon=None, radii=None):
    """
    Certify translated copies of the solutions of f = a in a seed disk

    With mu the minimum of |f - a| on the seed circle, every omega with
    B(omega) < mu moves the seed disk to a disk holding as many solutions, by
    Rouche's theorem. Negative translations come for free since B is even.

    :param series: finite Dirichlet-form sum
    :type series: ExponentialSum
    :param a: target value
    :param seed_disk: disk holding at least one solution, none on its circle
    :type seed_disk: ComplexDiskRegion
    :param omegas: candidate translations
    :param epsilon: tolerance the candidates were found with (optional); refused when epsilon >= mu
    :param radii: radius grid of the lower bounds (optional, default: 8 points up to the outermost disk)
    :rtype: RecurrenceReport
    :raises CertificationRefused: when mu <= 0, epsilon >= mu or the seed disk holds no solution

    :example:
        >>> f = make_sum([(0, 1), (1, -1)])      # 1 - e^{-s}, zeros 2 pi i k
        >>> report = rouche_recurrence(f, 0, ComplexDiskRegion(0, 1), [2 * math.pi * k for k in range(1, 5)])
        >>> len(report.omegas)
        9
    """
    oracle = as_oracle(series)
    a = complex(a)
    mu = boundary_minimum(series, seed_disk, a)
    if mu <= 0:
        raise CertificationRefused("|f - a| is not bounded away from 0 on the seed circle " + repr(seed_disk))
    if epsilon is not None and epsilon >= mu:
        raise CertificationRefused("epsilon " + str(epsilon) + " is not below the boundary minimum " + str(mu))
    seed_count = count_in_disk(shift_oracle(oracle, seed_disk.center), seed_disk.radius, a).count
    if seed_count < 1:
        raise CertificationRefused("the seed disk " + repr(seed_disk) + " holds no solution of f = " + str(a))
    candidates = np.unique(np.abs(np.asarray(list(omegas), dtype=float)))
    candidates = candidates[candidates > 0]
    sigma0 = seed_disk.center.real - seed_disk.radius
    bound = translation_bound(series, candidates, sigma0) if candidates.size else np.array([])
    certified = candidates[bound < mu]
    kept = _separated(list(certified) + list(-certified), 2.0 * seed_disk.radius)
    log.debug("Certified " + str(certified.size) + " of " + str(candidates.size) + " translations, kept " +
              str(len(kept)))
    reach = np.array([abs(seed_disk.center + 1j * w) + seed_disk.radius for w in kept])
    if radii is None:
        outer = float(np.max(reach))
        radii = list(np.linspace(outer / 8.0, outer, 8))
    n_lower, N_lower = [], []
    for r in radii:
        inside = reach[reach <= r]
        n_lower.append(seed_count * int(inside.size))
        N_lower.append(seed_count * math.fsum(math.log(r / t) for t in inside))
    if len(radii) >= 2:
        fit = stats.linregress(radii, N_lower)
        slope, stderr = float(fit.slope), float(fit.stderr)
    else:
        slope, stderr = math.nan, math.nan
    report = RecurrenceReport(mu, seed_disk, seed_count, kept, list(radii), n_lower, N_lower, slope, stderr, a)
    log.info("Rouche recurrence: " + repr(report))
    return report


def confirm_translates(series, report):
    """
    Recount every certified translated disk by the argument principle

    :return: centers whose count differs from the seed count
    :rtype: list
    """
    oracle = as_oracle(series)
    radius = report.seed_disk.radius
    bad = []
    for center in report.centers:
        found = count_in_disk(shift_oracle(oracle, center), radius, report.target)
        if found.count != report.seed_count or not found.certified:
            bad.append(center)
    if bad:
        log.warning(str(len(bad)) + " translated disks disagree with the seed count")
    return bad


def seed_disk_for(records, index=0, cap=0.5):
    """
    Seed disk around one located solution, isolated from the others

    :param records: located solutions (ZeroRecord list)
    :param index: which record to use
    :param cap: largest radius allowed
    :rtype: ComplexDiskRegion
    """
    center = records[index].position
    gaps = [abs(rec.position - center) for i, rec in enumerate(records) if i != index]
    radius = min([cap] + [0.4 * g for g in gaps])
    return ComplexDiskRegion(center, radius)
