import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirichletlib.cartan import (DiskCover, ScanExhausted, cartan_cover, verify_cover, select_annulus_point,
                                 annulus_point_for)
from dirichletlib.engine.errors import InvalidArgument
from dirichletlib.oracle import ComplexDiskRegion, as_oracle, geometric_oracle
from dirichletlib.series import make_sum
from tests.enablelog import banner


def random_points(seed, count, radius):
    rng = np.random.default_rng(seed)
    return radius * np.sqrt(rng.uniform(size=count)) * np.exp(2j * math.pi * rng.uniform(size=count))


def test_single_point_cover():
    banner("Cartan covers")
    cover = cartan_cover([0], 1.0)
    assert len(cover) == 1
    assert cover.to_json() == [[[0.0, 0.0], 2.0]]
    assert cover.total_radius == 2.0


def test_empty_cover():
    cover = cartan_cover([], 3.0)
    assert len(cover) == 0
    assert cover.total_radius == 0
    assert not cover.contains(0)
    assert cover.bound_holds(1.0 + 1j)


def test_cover_rejects_bad_h():
    with pytest.raises(InvalidArgument):
        cartan_cover([1.0], 0.0)


def test_cluster_goes_into_one_disk():
    points = [0.0, 0.001, 0.001j, 50.0]
    cover = cartan_cover(points, 1.0)
    assert cover.total_radius == pytest.approx(2.0)
    assert sorted(int(round(r * 4 / 2.0)) for r in cover.radii) == [1, 3]


@pytest.mark.parametrize("seed", range(10))
def test_random_covers(seed):
    cover = cartan_cover(random_points(seed, 20, 10.0), 1.0)
    assert abs(cover.total_radius - 2.0) < 1e-12
    outside, violations = verify_cover(cover, 10000, seed)
    assert outside > 0
    assert violations == 0


def test_repeated_points_count_with_multiplicity():
    cover = cartan_cover([1j, 1j, 1j], 0.5)
    assert cover.n_points == 3
    assert cover.total_radius == pytest.approx(1.0)
    assert cover.contains(1j)


def test_combined_cover():
    a = cartan_cover(random_points(1, 5, 4.0), 2.0)
    b = cartan_cover(random_points(2, 7, 4.0), 2.0)
    both = a.combine(b)
    assert both.invocations == 2
    assert both.n_points == 12
    assert both.total_radius == pytest.approx(2.0 * 2.0 * both.invocations)
    with pytest.raises(InvalidArgument):
        a.combine(cartan_cover([0], 1.0))


def test_select_annulus_point():
    cover = cartan_cover(random_points(3, 15, 4.0), 0.5)
    point = select_annulus_point(cover, 16.0)
    assert 1.0 <= abs(point) <= 4.0 * (1 + 1e-12)
    assert not cover.contains(point)


def test_select_annulus_point_without_disks():
    assert select_annulus_point(cartan_cover([], 0.5), 16) == 1 + 0j


def test_scan_exhausted():
    cover = DiskCover([ComplexDiskRegion(0, 100.0)], 1.0, 1, [0j])
    with pytest.raises(ScanExhausted):
        select_annulus_point(cover, 16.0)


def test_annulus_point_for_a_sum():
    f = as_oracle(make_sum([(0, 1), (math.log(2), 1)]))
    picked = annulus_point_for(f, 32.0)
    assert picked.regular
    assert 2.0 <= abs(picked.point) <= 8.0 * (1 + 1e-12)
    assert picked.cover.total_radius == pytest.approx(2.0)
    assert picked.zero_bound
    assert picked.pole_bound
    assert picked.to_dict()["value"] != "inf"


def test_annulus_point_for_a_meromorphic_function():
    picked = annulus_point_for(geometric_oracle(), 32.0)
    assert picked.regular
    assert picked.cover.invocations == 2
    assert picked.cover.n_points == 11


@settings(max_examples=25, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1,
                max_size=12),
       st.floats(0.1, 3.0))
def test_radii_add_up_to_2h(points, h):
    cover = cartan_cover(points, h)
    assert cover.total_radius == pytest.approx(2.0 * h, rel=1e-12)
    assert all(cover.contains(p) or cover.bound_holds(p) for p in points)
