import csv
import logging
import math

import numpy as np

from .constants import (KIND_ZERO, KIND_POLE, INFINITY, QUAD_TOL, INITIAL_PANELS, WINDING_SLACK, BOUNDARY_DELTA,
                        BOUNDARY_RETRIES, CONTOUR_GUARD, PRESCAN_GUARD, PRESCAN_POINTS, MULTIPLICITY_CAP,
                        RESOLUTION_FLOOR, ISOLATE_SIDE, NEWTON_MAX_ITER, SPLIT_OFFSETS, POLE_CIRCLE,
                        N_GRID_POINTS, JUMP_RESOLUTION, CSV_COLUMNS)
from .engine.errors import NearContour, UncertifiedCount, ValidityExceeded, InvalidArgument
from .engine.quadrature import AdaptivePanels
from .engine.workers import parallel_map
from .series import EPS
from .utility.utils import complex_to_pair, format_number, lexicographic

log = logging.getLogger(__name__)

ORIGIN_TOL = 1e-8


def _is_infinite(a):
    return isinstance(a, float) and math.isinf(a)


class ZeroRecord(object):
    """
    A located solution of f = a, or a pole

    :ivar position: location
    :ivar multiplicity: winding number of f - a (minus it, for poles) around the certification circle
    :ivar kind: 'zero' or 'pole'
    :ivar certification_radius: radius of the isolating circle centered at position
    :ivar residual: |f(position) - a| for zeros, 1/|f(position)| for poles
    :ivar flagged: True for merged clusters at the resolution floor and uncertified poles
    """

    def __init__(self, position, multiplicity, kind, certification_radius, residual, target=0.0, flagged=False):
        self.position = complex(position)
        self.multiplicity = int(multiplicity)
        self.kind = kind
        self.certification_radius = float(certification_radius)
        self.residual = float(residual)
        self.target = target
        self.flagged = flagged

    def to_dict(self):
        return {
            "position": complex_to_pair(self.position),
            "multiplicity": self.multiplicity,
            "kind": self.kind,
            "certification_radius": self.certification_radius,
            "residual": self.residual,
            "flagged": self.flagged,
        }

    def __repr__(self):
        return "ZeroRecord(%r, multiplicity=%d, kind=%s%s)" % (
            self.position, self.multiplicity, self.kind, ", flagged" if self.flagged else "")


class DiskCount(object):
    """
    Result of count_in_disk; unpacks as (count, certified)

    :ivar count: number of solutions (or poles) in the closed disk, with multiplicity
    :ivar certified: True when the winding number rounded to an integer within slack
    :ivar radius: the radius actually used, r or its outward perturbation
    :ivar winding: raw winding number (None for pole counts)
    :ivar attempts: number of radii tried
    :ivar diagnostic: list of messages about rejected radii
    """

    def __init__(self, count, certified, radius, winding=None, attempts=1, diagnostic=None):
        self.count = count
        self.certified = certified
        self.radius = radius
        self.winding = winding
        self.attempts = attempts
        self.diagnostic = diagnostic or []

    def __iter__(self):
        return iter((self.count, self.certified))

    def __repr__(self):
        return "DiskCount(count=%d, certified=%r, radius=%r)" % (self.count, self.certified, self.radius)


class IntegratedCount(object):
    """
    N(r, a; f) by two estimators

    :ivar value: sum over located solutions of log(r/|alpha|) plus n(0) log r
    :ivar grid_value: integral of (n(t) - n(0))/t from the counting function, plus n(0) log r
    :ivar discrepancy: |value - grid_value|
    """

    def __init__(self, value, grid_value, origin_multiplicity, records):
        self.value = value
        self.grid_value = grid_value
        self.discrepancy = abs(value - grid_value)
        self.origin_multiplicity = origin_multiplicity
        self.records = records

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return "IntegratedCount(value=%r, grid_value=%r)" % (self.value, self.grid_value)


class CountingTable(object):
    """
    Rows (r, n_zero, n_pole, N_zero, N_pole, ratio) over a radius grid

    :param target: the value a counted by n_zero
    :param metadata: free-form dict echoed into reports
    """

    def __init__(self, target=0.0, metadata=None):
        self.target = target
        self.metadata = metadata or {}
        self._rows = []

    def add_row(self, r, n_zero, n_pole, N_zero, N_pole):
        if self._rows and r <= self._rows[-1][0]:
            raise InvalidArgument("counting table radii must be strictly increasing")
        ratio = (n_zero + n_pole) / r
        self._rows.append((float(r), int(n_zero), int(n_pole), float(N_zero), float(N_pole), ratio))

    @property
    def rows(self):
        return list(self._rows)

    @property
    def radii(self):
        return [row[0] for row in self._rows]

    @property
    def n_zero(self):
        return [row[1] for row in self._rows]

    @property
    def n_pole(self):
        return [row[2] for row in self._rows]

    @property
    def N_zero(self):
        return [row[3] for row in self._rows]

    @property
    def N_pole(self):
        return [row[4] for row in self._rows]

    @property
    def ratios(self):
        return [row[5] for row in self._rows]

    def is_monotone(self):
        return all(a[1] <= b[1] and a[2] <= b[2] for a, b in zip(self._rows, self._rows[1:]))

    def chain_violations(self):
        """
        Pairs of grid radii r, r' >= e r where n(r) > N(r') - N(r), with n = n_zero + n_pole

        Since N is nondecreasing, n(r) <= N(e r) - N(r) <= N(r') - N(r) must hold.

        :return: list of (r, r') pairs violating the chain inequality
        """
        bad = []
        for i, low in enumerate(self._rows):
            for high in self._rows[i + 1:]:
                if high[0] < math.e * low[0]:
                    continue
                lhs = low[1] + low[2]
                rhs = (high[3] + high[4]) - (low[3] + low[4])
                if lhs > rhs + 1e-9 * max(1.0, abs(rhs)):
                    bad.append((low[0], high[0]))
                break
        return bad

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self._rows:
            writer.writerow([format_number(v) for v in row])

    def __len__(self):
        return len(self._rows)


# ----------------------------------------------------------------------------
# contour integrals
# ----------------------------------------------------------------------------

def _log_derivative(oracle, z, a, guard):
    g, _ = oracle.evaluate_many(z)
    dg, _ = oracle.derivative_many(z)
    if not _is_infinite(a):
        g = g - a
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = dg / g
        distance = np.abs(g) / np.abs(dg)
    if not np.all(np.isfinite(ratio)) or np.any(distance < guard):
        raise NearContour("contour passes within Newton distance " + str(guard) + " of a solution or pole")
    return ratio


def _prescan(oracle, center, radius, a):
    z = center + radius * np.exp(2j * math.pi * np.arange(PRESCAN_POINTS) / PRESCAN_POINTS)
    try:
        _log_derivative(oracle, z, a, PRESCAN_GUARD * radius)
    except NearContour:
        return False
    return True


def _circle_quadrature(oracle, center, radius, a, tol):
    guard = CONTOUR_GUARD * radius

    def integrand(theta):
        e = np.exp(1j * theta)
        z = center + radius * e
        return _log_derivative(oracle, z, a, guard) * radius * e / (2.0 * math.pi)

    panels = max(INITIAL_PANELS, int(math.ceil(4.0 * radius)))
    return AdaptivePanels(integrand, tol).integrate(0.0, 2.0 * math.pi, panels)


def _round_winding(result):
    nearest = int(round(result.value.real))
    ok = (result.converged and abs(result.value - nearest) < WINDING_SLACK and
          abs(result.coarse_value - nearest) < WINDING_SLACK)
    return nearest, ok


def circle_winding(oracle, center, radius, a=0.0, tol=QUAD_TOL):
    """
    Winding number of f - a around the circle |s - center| = radius

    :return: number of solutions minus number of poles inside the circle
    :rtype: int
    :raises NearContour: when the circle runs through a solution or pole
    :raises UncertifiedCount: when the quadrature does not round to an integer
    """
    result = _circle_quadrature(oracle, complex(center), radius, a, tol)
    nearest, ok = _round_winding(result)
    if not ok:
        raise UncertifiedCount("winding " + str(result.value) + " around " + str(center) + " is not certified",
                               repr(result))
    return nearest


def _radius_schedule(r):
    yield r
    for k in range(BOUNDARY_RETRIES):
        yield r * (1.0 + BOUNDARY_DELTA * 2 ** k)


def count_in_disk(oracle, r, a=0.0, tol=QUAD_TOL):
    """
    Number of solutions of f(s) = a in the closed disk |s| <= r, with multiplicity

    The winding number of f - a is computed by adaptive quadrature on the circle
    and the poles inside are added back. When the circle runs through a solution
    or pole the radius is pushed outward through a fixed schedule, so boundary
    solutions are counted.

    :param oracle: the function
    :type oracle: MeromorphicOracle
    :param r: radius
    :type r: float
    :param a: target value, math.inf counts poles (optional, default: 0)
    :param tol: quadrature tolerance on the winding number (optional, default: 1e-8)
    :return: the count with its certification data
    :rtype: DiskCount
    :raises ValidityExceeded: when r exceeds the oracle's validity radius

    :example:
        >>> count, certified = count_in_disk(as_oracle(make_sum([(0, 1), (math.log(2), 1)])), 10)
        >>> count
        2
    """
    if not r > 0:
        raise InvalidArgument("radius must be positive, got " + repr(r))
    if r > oracle.validity_radius * (1.0 + 1e-12):
        raise ValidityExceeded("radius " + str(r) + " exceeds the validity radius " + str(oracle.validity_radius) +
                               " of " + oracle.name)
    if _is_infinite(a):
        return _count_poles(oracle, r)
    a = complex(a)
    diagnostic = []
    fallback = None
    attempts = 0
    for radius in _radius_schedule(r):
        if radius > oracle.validity_radius:
            diagnostic.append("radius " + repr(radius) + " leaves the validity disk")
            break
        attempts += 1
        if not _prescan(oracle, 0j, radius, a):
            diagnostic.append("radius " + repr(radius) + ": solution or pole close to the circle")
            continue
        try:
            result = _circle_quadrature(oracle, 0j, radius, a, tol)
        except NearContour as e:
            diagnostic.append("radius " + repr(radius) + ": " + e.message)
            continue
        nearest, ok = _round_winding(result)
        log.debug(oracle.name + ": winding at radius " + repr(radius) + " is " + str(result.value) + " on " +
                  str(result.panels) + " panels")
        if not ok:
            diagnostic.append("radius " + repr(radius) + ": winding " + str(result.value) + " not certified " +
                              repr(result))
            if fallback is None:
                fallback = (nearest, radius, result.value)
            continue
        poles = sum(m for _, m in oracle.pole_positions(radius))
        return DiskCount(nearest + poles, True, radius, result.value, attempts, diagnostic)
    log.warning(oracle.name + ": count in |s| <= " + str(r) + " for a=" + str(a) + " is not certified")
    if fallback is None:
        return DiskCount(0, False, r, None, attempts, diagnostic)
    nearest, radius, winding = fallback
    poles = sum(m for _, m in oracle.pole_positions(radius))
    return DiskCount(nearest + poles, False, radius, winding, attempts, diagnostic)


def _count_poles(oracle, r):
    diagnostic = []
    attempts = 0
    for radius in _radius_schedule(r):
        if radius > oracle.validity_radius:
            break
        attempts += 1
        poles = oracle.pole_positions(radius * (1.0 + PRESCAN_GUARD))
        if any(abs(abs(p) - radius) <= PRESCAN_GUARD * radius for p, _ in poles):
            diagnostic.append("radius " + repr(radius) + ": pole on the circle")
            continue
        records = _pole_records(oracle, [(p, m) for p, m in poles if abs(p) <= radius])
        certified = not any(rec.flagged for rec in records)
        return DiskCount(sum(rec.multiplicity for rec in records), certified, radius, None, attempts, diagnostic)
    return DiskCount(0, False, r, None, attempts, diagnostic)


def _pole_records(oracle, poles):
    records = []
    for p, m in poles:
        others = [abs(p - q) for q, _ in poles if q != p]
        rho = min([POLE_CIRCLE] + [0.5 * d for d in others])
        flagged = False
        if oracle.poles_declared:
            try:
                flagged = circle_winding(oracle, p, rho) != -m
            except (NearContour, UncertifiedCount) as e:
                log.warning(oracle.name + ": pole at " + str(p) + " not certified: " + str(e))
                flagged = True
        with np.errstate(divide='ignore', invalid='ignore'):
            value = abs(oracle.evaluate(p)[0])
        residual = 1.0 / value if np.isfinite(value) and value > 0 else 0.0
        records.append(ZeroRecord(p, m, KIND_POLE, rho, residual, INFINITY, flagged))
    return records


# ----------------------------------------------------------------------------
# localisation
# ----------------------------------------------------------------------------

class _Box(object):
    def __init__(self, x0, x1, y0, y1):
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1

    @property
    def side(self):
        return max(self.x1 - self.x0, self.y1 - self.y0)

    @property
    def center(self):
        return complex(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))

    @property
    def corners(self):
        return [complex(self.x0, self.y0), complex(self.x1, self.y0), complex(self.x1, self.y1),
                complex(self.x0, self.y1)]

    def contains(self, z, margin=0.0):
        return (self.x0 - margin <= z.real <= self.x1 + margin) and (self.y0 - margin <= z.imag <= self.y1 + margin)

    def edge_distance(self, z):
        return min(z.real - self.x0, self.x1 - z.real, z.imag - self.y0, self.y1 - z.imag)

    def distance_from_origin(self):
        dx = max(self.x0, 0.0, -self.x1)
        dy = max(self.y0, 0.0, -self.y1)
        return math.hypot(dx, dy)

    def split(self, offset):
        xm = 0.5 * (self.x0 + self.x1) + offset * (self.x1 - self.x0)
        ym = 0.5 * (self.y0 + self.y1) + offset * (self.y1 - self.y0)
        return [_Box(self.x0, xm, self.y0, ym), _Box(xm, self.x1, self.y0, ym),
                _Box(self.x0, xm, ym, self.y1), _Box(xm, self.x1, ym, self.y1)]

    def __repr__(self):
        return "_Box([%g, %g] x [%g, %g])" % (self.x0, self.x1, self.y0, self.y1)


class _Locator(object):
    """
    Box subdivision search for the solutions of f = a inside |s| <= radius
    """

    def __init__(self, oracle, a, radius, tol):
        self.oracle = oracle
        self.a = a
        self.radius = radius
        self.tol = tol
        self.floor = RESOLUTION_FLOOR * max(1.0, radius)
        self.poles = []

    def _edge(self, z0, z1, guard):
        delta = z1 - z0
        oracle, a = self.oracle, self.a

        def integrand(t):
            return _log_derivative(oracle, z0 + t * delta, a, guard) * delta / (2j * math.pi)

        panels = max(2, int(math.ceil(abs(delta) / 2.0)))
        return AdaptivePanels(integrand, self.tol / 4.0).integrate(0.0, 1.0, panels)

    def box_count(self, box):
        side = box.side
        for p, _ in self.poles:
            if box.contains(p, margin=1e-6 * side) and box.edge_distance(p) <= 1e-6 * side:
                raise NearContour("pole at " + str(p) + " on a box edge")
        corners = box.corners
        t = np.linspace(0.0, 1.0, 64, endpoint=False)
        ring = np.concatenate([c0 + t * (c1 - c0) for c0, c1 in zip(corners, corners[1:] + corners[:1])])
        _log_derivative(self.oracle, ring, self.a, 1e-6 * side)
        value = 0j
        coarse = 0j
        converged = True
        for c0, c1 in zip(corners, corners[1:] + corners[:1]):
            result = self._edge(c0, c1, CONTOUR_GUARD * max(1.0, side))
            value += result.value
            coarse += result.coarse_value
            converged = converged and result.converged
        nearest = int(round(value.real))
        if not (converged and abs(value - nearest) < WINDING_SLACK and abs(coarse - nearest) < WINDING_SLACK):
            raise UncertifiedCount("box winding " + str(value) + " not certified on " + repr(box))
        inside = sum(m for p, m in self.poles if box.contains(p))
        return nearest + inside

    def _split(self, box, count):
        for offset in SPLIT_OFFSETS:
            children = box.split(offset)
            try:
                counts = [self.box_count(child) for child in children]
            except (NearContour, UncertifiedCount) as e:
                log.debug("Split of " + repr(box) + " at offset " + str(offset) + " rejected: " + str(e))
                continue
            if sum(counts) == count:
                return list(zip(children, counts))
            log.debug("Split of " + repr(box) + " gave " + str(counts) + " instead of " + str(count))
        return None

    def _polish(self, box, count):
        oracle, a = self.oracle, self.a
        s = box.center
        side = box.side
        for _ in range(NEWTON_MAX_ITER):
            g, _ = oracle.evaluate(s)
            g -= a
            if g == 0:
                break
            dg, _ = oracle.derivative(s)
            if dg == 0 or not np.isfinite(dg) or not np.isfinite(g):
                return None
            step = count * g / dg
            s = s - step
            if not box.contains(s, margin=0.25 * side):
                return None
            if abs(step) <= 4.0 * EPS * max(1.0, abs(s)):
                break
        if not box.contains(s):
            return None
        rho = min(0.5 * box.edge_distance(s), 0.25 * side)
        if rho <= 1e-9 * side:
            return None
        try:
            winding = circle_winding(oracle, s, rho, a, self.tol)
        except (NearContour, UncertifiedCount):
            return None
        inside = sum(m for p, m in self.poles if abs(p - s) < rho)
        if winding + inside != count:
            return None
        residual = abs(oracle.evaluate(s)[0] - a)
        return ZeroRecord(s, count, KIND_ZERO, rho, residual, self.a)

    def _cluster(self, box, count):
        center = box.center
        log.warning(self.oracle.name + ": unresolved cluster of multiplicity " + str(count) + " near " + str(center))
        residual = abs(self.oracle.evaluate(center)[0] - self.a)
        return ZeroRecord(center, count, KIND_ZERO, 0.75 * box.side, residual, self.a, flagged=True)

    def resolve(self, item):
        box, count = item
        found = []
        stack = [(box, count)]
        while stack:
            box, count = stack.pop()
            if count == 0:
                continue
            if count <= MULTIPLICITY_CAP and box.side <= ISOLATE_SIDE:
                record = self._polish(box, count)
                if record is not None:
                    found.append(record)
                    continue
            if box.side <= self.floor:
                found.append(self._cluster(box, count))
                continue
            children = self._split(box, count)
            if children is None:
                found.append(self._cluster(box, count))
                continue
            stack.extend(reversed([each for each in children if each[1]]))
        return found

    def tiles(self, shift):
        radius = self.radius
        half = 1.06 * radius
        center = complex(shift * radius, shift * radius * 0.7)
        validity = self.oracle.validity_radius
        if abs(center) + half * math.sqrt(2.0) <= validity:
            return [_Box(center.real - half, center.real + half, center.imag - half, center.imag + half)]
        room = validity - radius
        if room <= radius / 64.0:
            raise ValidityExceeded("no room between radius " + str(radius) + " and validity radius " + str(validity) +
                                   " to tile the disk")
        step = 0.95 * room / math.sqrt(2.0)
        n = int(math.ceil(2.0 * half / step))
        step = 2.0 * half / n
        x0 = center.real - half
        y0 = center.imag - half
        boxes = []
        for j in range(n):
            for i in range(n):
                box = _Box(x0 + i * step, x0 + (i + 1) * step, y0 + j * step, y0 + (j + 1) * step)
                if box.distance_from_origin() <= radius:
                    boxes.append(box)
        return boxes

    def run(self):
        last_error = None
        for shift in [0.0] + SPLIT_OFFSETS:
            boxes = self.tiles(shift)
            reach = max(abs(c) for box in boxes for c in box.corners)
            self.poles = self.oracle.pole_positions(min(reach, self.oracle.validity_radius))
            try:
                counts = parallel_map(self.box_count, boxes)
            except (NearContour, UncertifiedCount) as e:
                last_error = e
                log.debug("Tiling with shift " + str(shift) + " rejected: " + str(e))
                continue
            work = [(box, c) for box, c in zip(boxes, counts) if c]
            log.debug(self.oracle.name + ": " + str(len(work)) + " of " + str(len(boxes)) + " tiles hold solutions")
            found = []
            for records in parallel_map(self.resolve, work):
                found.extend(records)
            return found
        raise UncertifiedCount("no tiling of |s| <= " + str(self.radius) + " gave certified box counts",
                               str(last_error))


def locate_values(oracle, r, a=0.0, tol=QUAD_TOL):
    """
    Locate the solutions of f(s) = a in |s| <= r with multiplicities

    The enclosing square is quadrisected recursively; boxes with no solution are
    dropped, small boxes are finished by Newton polishing and the multiplicity is
    the winding number on an isolating circle inside the box.

    :param oracle: the function
    :param r: radius
    :param a: target value, math.inf returns the poles (optional, default: 0)
    :return: records sorted lexicographically by position
    :rtype: list of ZeroRecord
    :raises UncertifiedCount: when the count at r is not certified or the records do not add up to it

    :example:
        >>> [round(abs(rec.position), 6) for rec in locate_values(as_oracle(make_sum([(0, 1), (1, -1)])), 7)]
        [6.283185, 0.0, 6.283185]
    """
    if _is_infinite(a):
        dc = _count_poles(oracle, r)
        records = _pole_records(oracle, oracle.pole_positions(dc.radius))
        return sorted(records, key=lambda rec: lexicographic(rec.position))
    a = complex(a)
    dc = count_in_disk(oracle, r, a, tol)
    if not dc.certified:
        raise UncertifiedCount(oracle.name + ": count in |s| <= " + str(r) + " is not certified", dc.diagnostic)
    if dc.count == 0:
        return []
    found = _Locator(oracle, a, dc.radius, tol).run()
    records = [rec for rec in found if abs(rec.position) <= dc.radius * (1.0 + 1e-12) or
               (rec.flagged and abs(rec.position) - rec.certification_radius <= dc.radius)]
    records.sort(key=lambda rec: lexicographic(rec.position))
    total = sum(rec.multiplicity for rec in records)
    if total != dc.count:
        raise UncertifiedCount(oracle.name + ": located multiplicities add up to " + str(total) +
                               " but the disk count is " + str(dc.count), repr(records))
    log.info(oracle.name + ": located " + str(len(records)) + " solutions of f=" + str(a) + " in |s| <= " +
             str(dc.radius))
    return records


# ----------------------------------------------------------------------------
# integrated counting function
# ----------------------------------------------------------------------------

def origin_multiplicity(oracle, a=0.0):
    """
    n(0, a; f): multiplicity of s = 0 as a solution of f = a (or as a pole for a = inf)
    """
    if _is_infinite(a):
        m, _ = oracle.laurent_at_origin(0.0)
        return max(-m, 0)
    m, _ = oracle.laurent_at_origin(a)
    return max(m, 0)


def _zero_sum(records, r, n0):
    terms = [rec.multiplicity * math.log(r / abs(rec.position)) for rec in records
             if abs(rec.position) > ORIGIN_TOL]
    return math.fsum(terms) + n0 * math.log(r)


def _counting_function(oracle, a, tol):
    def n_at(t):
        dc = count_in_disk(oracle, t, a, tol)
        if not dc.certified:
            raise UncertifiedCount(oracle.name + ": count at radius " + str(t) + " is not certified", dc.diagnostic)
        return dc.count

    return n_at


def _bisect_jump(n_at, lo, n_lo, hi, n_hi, resolution, jumps):
    if hi - lo <= resolution:
        jumps.append((0.5 * (lo + hi), n_hi - n_lo))
        return
    mid = 0.5 * (lo + hi)
    n_mid = n_at(mid)
    if n_mid > n_lo:
        _bisect_jump(n_at, lo, n_lo, mid, n_mid, resolution, jumps)
    if n_hi > n_mid:
        _bisect_jump(n_at, mid, n_mid, hi, n_hi, resolution, jumps)


def _grid_integral(oracle, r, a, n0, tol):
    n_at = _counting_function(oracle, a, tol)
    floor = r * JUMP_RESOLUTION
    start = n_at(floor)
    grid = [r * k / N_GRID_POINTS for k in range(1, N_GRID_POINTS + 1)]
    counts = parallel_map(n_at, grid)
    jumps = []
    prev_t, prev_n = floor, start
    for t, n in zip(grid, counts):
        if n < prev_n:
            log.warning(oracle.name + ": counting function decreases between " + str(prev_t) + " and " + str(t))
        elif n > prev_n:
            _bisect_jump(n_at, prev_t, prev_n, t, n, JUMP_RESOLUTION * r, jumps)
        prev_t, prev_n = t, n
    terms = [size * math.log(r / t) for t, size in jumps]
    terms.append((start - n0) * math.log(r / floor))
    return math.fsum(terms) + n0 * math.log(r)


def integrated_count(oracle, r, a=0.0, tol=QUAD_TOL):
    """
    Integrated counting function N(r, a; f)

    :return: both estimators and their discrepancy
    :rtype: IntegratedCount
    :raises OriginOrderError: when f(0) = a and its order at the origin cannot be determined

    :example:
        >>> round(integrated_count(as_oracle(make_sum([(0, 1), (1, -1)])), 2 * math.pi).value, 4)
        1.8379
    """
    n0 = origin_multiplicity(oracle, a)
    records = locate_values(oracle, r, a, tol)
    at_origin = sum(rec.multiplicity for rec in records if abs(rec.position) <= ORIGIN_TOL)
    if at_origin != n0:
        log.warning(oracle.name + ": located multiplicity " + str(at_origin) + " at the origin, Laurent data says " +
                    str(n0))
    value = _zero_sum(records, r, n0)
    grid_value = _grid_integral(oracle, r, a, n0, tol)
    result = IntegratedCount(value, grid_value, n0, records)
    log.debug(oracle.name + ": " + repr(result))
    return result


def build_counting_table(oracle, r_grid, a=0.0, tol=QUAD_TOL):
    """
    Counting table over a radius grid

    n_zero counts solutions of f = a, n_pole counts poles; N_zero and N_pole come
    from the located solutions and poles in the largest disk.

    :param r_grid: strictly increasing radii
    :rtype: CountingTable
    :raises UncertifiedCount: when a count on the grid is not certified
    """
    r_grid = [float(r) for r in r_grid]
    if not r_grid or any(r <= 0 for r in r_grid) or any(b <= a_ for a_, b in zip(r_grid, r_grid[1:])):
        raise InvalidArgument("radius grid must be positive and strictly increasing, got " + str(r_grid))
    r_max = r_grid[-1]
    zeros = locate_values(oracle, r_max, a, tol)
    poles = locate_values(oracle, r_max, INFINITY, tol)
    n0_zero = origin_multiplicity(oracle, a)
    n0_pole = origin_multiplicity(oracle, INFINITY)

    def row(r):
        dz = count_in_disk(oracle, r, a, tol)
        dp = count_in_disk(oracle, r, INFINITY, tol)
        if not (dz.certified and dp.certified):
            raise UncertifiedCount(oracle.name + ": count at radius " + str(r) + " is not certified",
                                   dz.diagnostic + dp.diagnostic)
        inside_z = [rec for rec in zeros if abs(rec.position) <= dz.radius]
        inside_p = [rec for rec in poles if abs(rec.position) <= dp.radius]
        if sum(rec.multiplicity for rec in inside_z) != dz.count:
            log.warning(oracle.name + ": located zeros disagree with the count at radius " + str(r))
        return dz, dp, _zero_sum(inside_z, r, n0_zero), _zero_sum(inside_p, r, n0_pole)

    table = CountingTable(a, {"oracle": oracle.name, "tol": tol, "radii_used": []})
    for r, (dz, dp, nz, np_) in zip(r_grid, parallel_map(row, r_grid)):
        table.add_row(r, dz.count, dp.count, nz, np_)
        table.metadata["radii_used"].append(dz.radius)
    log.info(oracle.name + ": counting table over " + str(len(r_grid)) + " radii done")
    return table


def is_value_nontrivial(series, a):
    """
    True unless f - a has the trivial form c e^{-lambda s}, which takes no value a anywhere

    :param series: the sum
    :type series: ExponentialSum
    :param a: target value
    :rtype: bool
    """
    if series.tail_bound is not None:
        return True
    mu, coefficients = series.dirichlet_exponents
    coefficients = coefficients.copy()
    zero = np.nonzero(mu == 0)[0]
    if zero.size:
        coefficients[zero[0]] -= a
        return np.count_nonzero(coefficients) >= 2
    return np.count_nonzero(coefficients) + (1 if a != 0 else 0) >= 2
