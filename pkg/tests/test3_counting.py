import io
import math

import pytest
from hypothesis import given, settings, strategies as st

from dirichletlib.constants import INFINITY, KIND_POLE, KIND_ZERO, CSV_COLUMNS
from dirichletlib.counting import (CountingTable, count_in_disk, locate_values, build_counting_table,
                                   integrated_count, origin_multiplicity, is_value_nontrivial, circle_winding)
from dirichletlib.engine.errors import InvalidArgument, ValidityExceeded
from dirichletlib.oracle import as_oracle, geometric_oracle, zeta_oracle, power_oracle
from dirichletlib.series import make_sum
from dirichletlib.verify import catalog
from tests.enablelog import banner

LN2 = math.log(2)


def one_plus_2pow():
    return as_oracle(make_sum([(0, 1), (LN2, 1)]))


def one_minus_exp():
    return as_oracle(make_sum([(0, 1), (1, -1)]))


@pytest.mark.parametrize("r, expected", [(5, 2), (10, 2), (20, 4), (50, 12)])
def test_counts_of_one_plus_2pow(r, expected):
    banner("count 1 + 2^-s in |s| <= " + str(r))
    count, certified = count_in_disk(one_plus_2pow(), r)
    assert certified
    assert count == expected


@pytest.mark.parametrize("r, expected", [(20, 7), (50, 15)])
def test_counts_of_one_minus_exp(r, expected):
    result = count_in_disk(one_minus_exp(), r)
    assert result.certified
    assert result.count == expected


@pytest.mark.parametrize("r, expected", [(10, 3), (20, 7)])
def test_pole_counts_of_geometric(r, expected):
    g = geometric_oracle()
    assert count_in_disk(g, r, INFINITY).count == expected
    assert count_in_disk(g, r).count == 0


def test_boundary_solutions_are_counted():
    # zeros of 1 - e^-s at +-2 pi i lie on the circle
    result = count_in_disk(one_minus_exp(), 2 * math.pi)
    assert result.certified
    assert result.count == 3
    assert result.radius > 2 * math.pi


def test_count_rejects_bad_radius():
    with pytest.raises(InvalidArgument):
        count_in_disk(one_plus_2pow(), 0)
    with pytest.raises(ValidityExceeded):
        count_in_disk(zeta_oracle(10.0), 12.0)


def test_count_of_a_value():
    # 1 + 2^-s = 2 exactly when 2^-s = 1, i.e. s = 2 pi i k / log 2
    count, certified = count_in_disk(one_plus_2pow(), 20, 2.0)
    assert certified
    assert count == 5


def test_locate_zeros_of_one_plus_2pow():
    records = locate_values(one_plus_2pow(), 20)
    assert [rec.kind for rec in records] == [KIND_ZERO] * 4
    assert sum(rec.multiplicity for rec in records) == 4
    expected = sorted(abs(math.pi * (2 * k + 1) / LN2) for k in (-2, -1, 0, 1))
    assert sorted(abs(rec.position) for rec in records) == pytest.approx(expected, abs=1e-8)
    assert all(abs(rec.position.real) < 1e-8 for rec in records)
    assert all(rec.residual < 1e-10 for rec in records)


def test_locate_double_zero():
    f = power_oracle(one_minus_exp(), 2)
    records = locate_values(f, 3)
    assert len(records) == 1
    assert records[0].multiplicity == 2
    assert abs(records[0].position) < 1e-4


def test_locate_poles():
    records = locate_values(geometric_oracle(), 10, INFINITY)
    assert [rec.kind for rec in records] == [KIND_POLE] * 3
    assert [rec.multiplicity for rec in records] == [1, 1, 1]
    assert not any(rec.flagged for rec in records)


def test_circle_winding_around_a_pole():
    assert circle_winding(geometric_oracle(), 2j * math.pi, 0.5) == -1
    assert circle_winding(one_minus_exp(), 0, 0.5) == 1


def test_origin_multiplicity():
    assert origin_multiplicity(one_minus_exp()) == 1
    assert origin_multiplicity(one_plus_2pow()) == 0
    assert origin_multiplicity(one_plus_2pow(), 2.0) == 1
    assert origin_multiplicity(geometric_oracle(), INFINITY) == 1


def test_integrated_count_with_zero_at_origin():
    result = integrated_count(one_minus_exp(), 2 * math.pi)
    assert result.value == pytest.approx(math.log(2 * math.pi), abs=1e-4)
    assert round(result.value, 4) == 1.8379
    assert result.discrepancy < 1e-3
    assert result.origin_multiplicity == 1


def test_integrated_count_matches_closed_form():
    r = 20.0
    expected = math.fsum(math.log(r / abs(math.pi * (2 * k + 1) / LN2)) for k in (-2, -1, 0, 1))
    result = integrated_count(one_plus_2pow(), r)
    assert result.value == pytest.approx(expected, abs=1e-6)
    assert result.grid_value == pytest.approx(expected, abs=1e-3)


def test_counting_table_of_one_plus_2pow():
    table = build_counting_table(one_plus_2pow(), [5, 10, 20, 50])
    assert table.n_zero == [2, 2, 4, 12]
    assert table.n_pole == [0, 0, 0, 0]
    assert table.ratios[-1] == pytest.approx(0.24)
    assert table.is_monotone()
    assert table.chain_violations() == []


def test_counting_table_of_geometric():
    table = build_counting_table(geometric_oracle(), [10, 20])
    assert table.n_pole == [3, 7]
    assert table.n_zero == [0, 0]
    assert table.N_pole[0] == pytest.approx(math.log(10) + 2 * math.log(10 / (2 * math.pi)))


def test_counting_table_rejects_bad_grids():
    with pytest.raises(InvalidArgument):
        build_counting_table(one_plus_2pow(), [10, 5])
    with pytest.raises(InvalidArgument):
        build_counting_table(one_plus_2pow(), [])
    table = CountingTable()
    table.add_row(1.0, 0, 0, 0.0, 0.0)
    with pytest.raises(InvalidArgument):
        table.add_row(1.0, 0, 0, 0.0, 0.0)


def test_counting_table_csv():
    table = build_counting_table(one_plus_2pow(), [5, 10])
    stream = io.StringIO()
    table.to_csv(stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].split(",")[:3] == ["5", "2", "0"]
    assert len(lines) == 3


def test_value_nontriviality():
    f = make_sum([(0, 1), (LN2, 1)])
    assert is_value_nontrivial(f, 0)
    assert is_value_nontrivial(f, 2)
    assert not is_value_nontrivial(f, 1)
    assert not is_value_nontrivial(make_sum([(1, 1)]), 0)
    assert is_value_nontrivial(make_sum([(1, 1)]), 3)


@settings(max_examples=10, deadline=None)
@given(st.floats(1.0, 30.0))
def test_counts_follow_the_closed_form(r):
    step = 2 * math.pi / LN2
    shift = math.pi / LN2
    if min(abs(r - abs(shift + k * step)) for k in range(-10, 10)) < 1e-3:
        return
    expected = sum(1 for k in range(-10, 10) if abs(shift + k * step) <= r)
    count, certified = count_in_disk(one_plus_2pow(), r)
    assert certified
    assert count == expected


EVALUATED = [entry.name for entry in catalog(False) if entry.factory is not None]


@pytest.mark.parametrize("name", EVALUATED)
@pytest.mark.parametrize("r", [5.0, 10.0, 20.0])
def test_located_multiplicities_match_the_count(name, r):
    oracle = next(entry for entry in catalog(False) if entry.name == name).oracle()
    located = locate_values(oracle, r)
    assert sum(rec.multiplicity for rec in located) == count_in_disk(oracle, r).count
    poles = locate_values(oracle, r, INFINITY)
    assert sum(rec.multiplicity for rec in poles) == count_in_disk(oracle, r, INFINITY).count
