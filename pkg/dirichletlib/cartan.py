import logging
import math

import numpy as np

from .constants import INFINITY
from .counting import locate_values
from .engine.errors import CustomException, InvalidArgument, ValidityExceeded
from .oracle import ComplexDiskRegion
from .utility.utils import lexicographic

log = logging.getLogger(__name__)

CONTAIN_SLACK = 1e-9
SCAN_LEVELS = 10


class ScanExhausted(CustomException):
    pass


class DiskCover(object):
    """
    Exceptional disks of Cartan's lemma

    Outside every disk the product over the covered points satisfies
    prod |s - a_k| > (h/e)^n. The radii of one invocation add up to 2h;
    a combined cover keeps count of its invocations.

    :param disks: the disks
    :type disks: list of ComplexDiskRegion
    :param h: the lemma's parameter
    :param n_points: number of covered points, with multiplicity
    :param points: the covered points (optional)
    :param invocations: number of merged covers (optional, default: 1)
    """

    def __init__(self, disks, h, n_points, points=None, invocations=1):
        self.disks = list(disks)
        self.h = float(h)
        self.n_points = int(n_points)
        self.points = np.array([] if points is None else points, dtype=complex)
        self.invocations = invocations

    @property
    def total_radius(self):
        return math.fsum(d.radius for d in self.disks)

    @property
    def centers(self):
        return np.array([d.center for d in self.disks], dtype=complex)

    @property
    def radii(self):
        return np.array([d.radius for d in self.disks])

    def contains(self, s):
        """
        True when s lies in one of the disks (boundary included)
        """
        return bool(np.any(self._inside(np.array([complex(s)]))))

    def _inside(self, samples):
        if not self.disks:
            return np.zeros(samples.shape, dtype=bool)
        dist = np.abs(samples[:, None] - self.centers[None, :])
        return np.any(dist <= self.radii[None, :] * (1.0 + CONTAIN_SLACK), axis=1)

    def log_product(self, samples):
        """
        log prod |s - a_k| over the covered points, vectorised over samples
        """
        samples = np.asarray(samples, dtype=complex)
        if self.points.size == 0:
            return np.zeros(samples.shape)
        with np.errstate(divide='ignore'):
            return np.sum(np.log(np.abs(samples[:, None] - self.points[None, :])), axis=1)

    @property
    def log_bound(self):
        return self.n_points * (math.log(self.h) - 1.0)

    def bound_holds(self, s):
        """
        prod |s - a_k| > (h/e)^n at s; vacuous for an empty cover
        """
        if self.n_points == 0:
            return True
        return bool(self.log_product(np.array([complex(s)]))[0] > self.log_bound)

    def combine(self, other):
        """
        Union of two covers built with the same h

        :rtype: DiskCover
        """
        if other.h != self.h:
            raise InvalidArgument("covers with different h cannot be combined")
        return DiskCover(self.disks + other.disks, self.h, self.n_points + other.n_points,
                         np.concatenate([self.points, other.points]), self.invocations + other.invocations)

    def to_json(self):
        return [d.to_list() for d in self.disks]

    def __len__(self):
        return len(self.disks)

    def __repr__(self):
        return "DiskCover(%d disks, h=%r, n_points=%d)" % (len(self.disks), self.h, self.n_points)


def _candidates(points, rho):
    """
    Centers that may maximise the number of points in a disk of radius rho:
    the points themselves and the centers of circles of radius rho through two points
    """
    centers = [p for p in points]
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            p, q = points[i], points[j]
            d = abs(q - p)
            if d == 0 or d > 2.0 * rho:
                continue
            mid = 0.5 * (p + q)
            offset = math.sqrt(max(rho * rho - 0.25 * d * d, 0.0))
            normal = 1j * (q - p) / d
            centers.append(mid + offset * normal)
            centers.append(mid - offset * normal)
    return np.array(centers, dtype=complex)


def _densest_disk(points, rho, k):
    """
    Lexicographically first candidate center whose disk of radius rho holds at least k points
    """
    centers = _candidates(points, rho)
    dist = np.abs(centers[:, None] - points[None, :])
    counts = np.sum(dist <= rho * (1.0 + CONTAIN_SLACK), axis=1)
    good = [c for c, n in zip(centers, counts) if n >= k]
    if not good:
        return None
    return min(good, key=lexicographic)


def cartan_cover(points, h):
    """
    Cartan's covering for a finite point list

    Repeatedly take the largest lambda for which a disk of radius lambda*h/n holds
    lambda of the remaining points, remove those points, and finally double
    every radius. The radii add up to 2h.

    :param points: complex points, repeated for multiplicity
    :param h: positive parameter
    :rtype: DiskCover

    :example:
        >>> cover = cartan_cover([0], 1.0)
        >>> cover.to_json()
        [[[0.0, 0.0], 2.0]]
    """
    if not h > 0:
        raise InvalidArgument("h must be positive, got " + repr(h))
    points = np.array([complex(p) for p in points], dtype=complex)
    n = points.size
    if n == 0:
        return DiskCover([], h, 0)
    remaining = points.copy()
    chosen = []
    k = n
    while remaining.size:
        k = min(k, remaining.size)
        while k > 1:
            center = _densest_disk(remaining, k * h / n, k)
            if center is not None:
                break
            k -= 1
        if k == 1:
            center = min(remaining, key=lexicographic)
        order = np.argsort(np.abs(remaining - center), kind="stable")
        remaining = np.delete(remaining, order[:k])
        chosen.append((complex(center), k))
        log.debug("Cartan cluster of " + str(k) + " points around " + str(center))
    disks = [ComplexDiskRegion(c, 2.0 * k * h / n) for c, k in chosen]
    cover = DiskCover(disks, h, n, points)
    log.debug("Cartan cover of " + str(n) + " points with h=" + str(h) + ": " + str(len(disks)) + " disks")
    return cover


def verify_cover(cover, samples=10000, seed=0, extent=None):
    """
    Monte-Carlo check of the product bound outside the cover

    Samples are uniform in a square around the covered points.

    :return: (number of samples outside the cover, number of violations)
    :rtype: tuple
    """
    rng = np.random.default_rng(seed)
    center = complex(np.mean(cover.points)) if cover.points.size else 0j
    if extent is None:
        spread = float(np.max(np.abs(cover.points - center))) if cover.points.size else 0.0
        extent = spread + 4.0 * cover.h
    xy = rng.uniform(-extent, extent, size=(samples, 2))
    s = center + xy[:, 0] + 1j * xy[:, 1]
    outside = s[~cover._inside(s)]
    violations = int(np.count_nonzero(cover.log_product(outside) <= cover.log_bound))
    if violations:
        log.warning(str(violations) + " of " + str(outside.size) + " samples violate the product bound of " +
                    repr(cover))
    return int(outside.size), violations


def _annulus_grid(R1, level):
    radial = np.linspace(R1 / 16.0, R1 / 4.0, 2 ** (level + 1) + 1)
    angular = 2.0 * math.pi * np.arange(8 * 2 ** level) / (8 * 2 ** level)
    return (radial[:, None] * np.exp(1j * angular[None, :])).ravel()


def select_annulus_point(cover, R1):
    """
    A point of R1/16 <= |s| <= R1/4 outside every disk of the cover

    The annulus is scanned on polar grids that double in resolution; the first
    free point of the first level that has one is returned.

    :param cover: cover built with h = R1/32
    :param R1: outer radius
    :rtype: complex
    :raises ScanExhausted: when no level of the scan finds a free point

    :example:
        >>> select_annulus_point(cartan_cover([], 0.5), 16)
        (1+0j)
    """
    for level in range(SCAN_LEVELS):
        grid = _annulus_grid(R1, level)
        free = np.nonzero(~cover._inside(grid))[0]
        if free.size:
            point = complex(grid[free[0]])
            log.debug("Annulus point " + str(point) + " found at scan level " + str(level))
            return point
    raise ScanExhausted("no point of the annulus " + str(R1 / 16.0) + " <= |s| <= " + str(R1 / 4.0) +
                        " lies outside " + repr(cover))


class AnnulusPoint(object):
    """
    Point of the annulus picked outside the zero and pole covers

    :ivar point: the point s0
    :ivar cover: combined cover of zeros and poles in |s| <= R1
    :ivar value: f(s0)
    :ivar zero_bound: product bound over the zeros holds at s0
    :ivar pole_bound: product bound over the poles holds at s0
    """

    def __init__(self, point, cover, value, zero_bound, pole_bound):
        self.point = point
        self.cover = cover
        self.value = value
        self.zero_bound = zero_bound
        self.pole_bound = pole_bound

    @property
    def regular(self):
        return self.value != 0 and bool(np.isfinite(self.value))

    def to_dict(self):
        return {
            "point": [self.point.real, self.point.imag],
            "disks": self.cover.to_json(),
            "total_radius": self.cover.total_radius,
            "value": [self.value.real, self.value.imag] if np.isfinite(self.value) else "inf",
            "zero_bound": self.zero_bound,
            "pole_bound": self.pole_bound,
        }


def annulus_point_for(oracle, R1):
    """
    Cover the zeros and poles of f in |s| <= R1 with h = R1/32 and pick a free annulus point

    :rtype: AnnulusPoint
    :raises ValidityExceeded: when R1 exceeds the validity radius
    """
    if R1 > oracle.validity_radius:
        raise ValidityExceeded("R1 " + str(R1) + " exceeds the validity radius of " + oracle.name)
    h = R1 / 32.0
    zeros = [rec.position for rec in locate_values(oracle, R1, 0.0) for _ in range(rec.multiplicity)]
    poles = [rec.position for rec in locate_values(oracle, R1, INFINITY) for _ in range(rec.multiplicity)]
    zero_cover = cartan_cover(zeros, h)
    pole_cover = cartan_cover(poles, h)
    cover = zero_cover.combine(pole_cover)
    point = select_annulus_point(cover, R1)
    with np.errstate(divide='ignore', invalid='ignore'):
        value, _ = oracle.evaluate(point)
    result = AnnulusPoint(point, cover, value, zero_cover.bound_holds(point), pole_cover.bound_holds(point))
    log.info(oracle.name + ": annulus point " + str(point) + " for R1=" + str(R1))
    return result
