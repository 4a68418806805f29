import math

import numpy as np
import pytest

from dirichletlib.almost_periodic import (translation_bound, translation_numbers, boundary_minimum,
                                          rouche_recurrence, confirm_translates, seed_disk_for)
from dirichletlib.counting import count_in_disk, locate_values
from dirichletlib.engine.errors import InvalidArgument, CertificationRefused
from dirichletlib.oracle import ComplexDiskRegion, as_oracle
from dirichletlib.series import make_sum, TailBound
from tests.enablelog import banner

LN2 = math.log(2)
PERIOD = 2 * math.pi / LN2


def one_plus_2pow():
    return make_sum([(0, 1), (LN2, 1)])


def one_minus_exp():
    return make_sum([(0, 1), (1, -1)])


def three_terms():
    return make_sum([(0, 1), (LN2, 1), (math.log(3), 1)])


def test_translation_bound_vanishes_on_periods():
    banner("almost periodicity")
    bound = translation_bound(one_plus_2pow(), [PERIOD, 2 * PERIOD, 0.5 * PERIOD])
    assert bound[0] < 1e-12
    assert bound[1] < 1e-12
    assert bound[2] == pytest.approx(2.0)


def test_translation_bound_decreases_with_sigma0():
    f = three_terms()
    omegas = np.linspace(0.1, 50, 200)
    assert np.all(translation_bound(f, omegas, 2.0) <= translation_bound(f, omegas, 0.0))


def test_periodic_sum_is_relatively_dense():
    tn = translation_numbers(one_plus_2pow(), 1e-3, 20, 1e-3, scan_range=(0, 100))
    assert tn.relatively_dense
    assert len(tn.windows) == 5
    for w in tn.representatives:
        k = round(w / PERIOD)
        assert abs(w - k * PERIOD) < 2e-3


def test_three_term_sum_is_relatively_dense():
    tn = translation_numbers(three_terms(), 0.1, 200.0, 1e-3, sigma0=2.0)
    assert tn.relatively_dense
    assert len(tn.windows) == 25
    assert np.all(translation_bound(three_terms(), tn.found, 2.0) <= 0.1 + 1e-12)


def test_failing_windows_are_reported():
    tn = translation_numbers(three_terms(), 1e-9, 100.0, 1e-2, scan_range=(1.0, 1001.0))
    assert not tn.relatively_dense
    assert tn.failing_windows
    data = tn.to_dict()
    assert data["failing_windows"] == [[lo, hi] for lo, hi in tn.failing_windows]
    assert data["count"] == len(tn)


def test_translation_scan_rejects_bad_input():
    with pytest.raises(InvalidArgument):
        translation_numbers(one_plus_2pow(), 0.0, 20, 1e-3)
    with pytest.raises(InvalidArgument):
        translation_numbers(one_plus_2pow(), 0.1, 20, 1e-3, scan_range=(10, 5))
    with pytest.raises(InvalidArgument):
        translation_bound(make_sum([(0, 1), (1, 1)], "exponential"), [1.0])
    with pytest.raises(InvalidArgument):
        translation_bound(make_sum([(0, 1), (LN2, 1)], tail_bound=TailBound(1.0, 1.0)), [1.0])


def test_boundary_minimum_is_a_lower_bound():
    f = one_minus_exp()
    disk = ComplexDiskRegion(0, 1.0)
    mu = boundary_minimum(f, disk)
    theta = np.linspace(0, 2 * math.pi, 997)
    values, _ = as_oracle(f).evaluate_many(np.exp(1j * theta))
    assert 0 < mu <= float(np.min(np.abs(values)))


def test_recurrence_of_one_minus_exp():
    f = one_minus_exp()
    report = rouche_recurrence(f, 0, ComplexDiskRegion(0, 1), [2 * math.pi * k for k in range(1, 5)])
    assert report.seed_count == 1
    assert len(report.omegas) == 9
    assert report.n_lower[-1] == 9
    assert report.n_lower[-1] <= count_in_disk(as_oracle(f), report.radii[-1]).count
    assert report.slope > 0
    assert confirm_translates(f, report) == []
    assert report.to_dict()["seed"] == [[0.0, 0.0], 1.0]


def test_recurrence_from_scanned_candidates():
    f = one_plus_2pow()
    records = locate_values(as_oracle(f), 10.0)
    seed = seed_disk_for(records, 0)
    assert seed.radius == 0.5
    candidates = translation_numbers(f, 0.05, 20.0, 1e-3, sigma0=seed.center.real - seed.radius,
                                     scan_range=(0.0, 100.0))
    report = rouche_recurrence(f, 0, seed, candidates.found, epsilon=0.05)
    assert report.seed_count == 1
    assert len(report.omegas) >= 2 * 11 + 1
    assert confirm_translates(f, report) == []


def test_recurrence_refusals():
    f = one_minus_exp()
    with pytest.raises(CertificationRefused):
        rouche_recurrence(f, 0, ComplexDiskRegion(3j, 1.0), [2 * math.pi])
    with pytest.raises(CertificationRefused):
        rouche_recurrence(f, 0, ComplexDiskRegion(0, 1.0), [2 * math.pi], epsilon=10.0)
    with pytest.raises(CertificationRefused):
        rouche_recurrence(f, 0, ComplexDiskRegion(0, 2 * math.pi), [2 * math.pi])


def test_seed_disk_is_isolated():
    records = locate_values(as_oracle(one_plus_2pow()), 20.0)
    seed = seed_disk_for(records, 1, cap=100.0)
    others = [rec.position for i, rec in enumerate(records) if i != 1]
    assert all(abs(p - seed.center) > seed.radius for p in others)
