import math

import pytest
from hypothesis import given, settings, strategies as st

from dirichletlib.constants import DISTINCT, IDENTICAL, INCONCLUSIVE, INFINITY
from dirichletlib.counting import locate_values
from dirichletlib.engine.errors import InsufficientGrid, HypothesisViolation, InvalidArgument
from dirichletlib.oracle import as_oracle, exp_polynomial_oracle, geometric_oracle, product_oracle
from dirichletlib.product import weierstrass_oracle
from dirichletlib.series import make_sum
from dirichletlib.symdiff import (AmbiguousMatch, symmetric_difference, linear_growth_verdict, default_grid,
                                  uniqueness_check, uniqueness_details, enough_common_zeros, shared_value_check)
from tests.enablelog import banner

T_GRID = [float(t) for t in range(10, 41)]


def F45():
    return as_oracle(make_sum([(0, 1), (math.log(4), 2)]))


def G9():
    return as_oracle(make_sum([(0, 1), (math.log(9), 3)]))


@pytest.fixture(scope="module")
def pair_zeros():
    return locate_values(F45(), 40.0), locate_values(G9(), 40.0)


def test_multiplicity_difference():
    banner("symmetric difference")
    report = symmetric_difference([(1j, 2)], [(1j, 1)], 5)
    assert report.D_values == [1]
    assert len(report.matched_pairs) == 1


def test_disjoint_and_shared_zeros():
    report = symmetric_difference([1j, 2j, 7j], [1j + 1e-9, 3j], [1.5, 2.5, 3.5, 10])
    assert report.D_values == [0, 1, 2, 3]
    assert report.n_F == [1, 2, 2, 3]
    assert report.n_G == [1, 1, 2, 2]
    assert len(report.unmatched_F) == 2
    assert len(report.unmatched_G) == 1


def test_ambiguous_match():
    with pytest.raises(AmbiguousMatch):
        symmetric_difference([1j, 1j + 5e-7], [1j], 5, match_tol=1e-6)


def test_pole_records_are_rejected():
    poles = locate_values(geometric_oracle(), 1.0, INFINITY)
    with pytest.raises(InvalidArgument):
        symmetric_difference(poles, [], 1.0)


def test_counterexample_pair_at_20(pair_zeros):
    zerosF, zerosG = pair_zeros
    report = symmetric_difference(zerosF, zerosG, 20.0)
    assert report.D_values == [22]
    assert report.n_F == [8]
    assert report.n_G == [14]


def test_counterexample_pair_slope(pair_zeros):
    zerosF, zerosG = pair_zeros
    report = symmetric_difference(zerosF, zerosG, T_GRID)
    theory = (math.log(4) + math.log(9)) / math.pi
    assert report.slope == pytest.approx(theory, rel=0.1)
    assert report.slope == pytest.approx(1.1403, abs=0.1)
    grows, A = linear_growth_verdict(symmetric_difference(zerosF, zerosG, default_grid(40.0)))
    assert grows
    assert A > 0.5


def test_verdict_needs_a_decade():
    report = symmetric_difference([1j], [2j], [5.0, 6.0, 7.0])
    with pytest.raises(InsufficientGrid):
        linear_growth_verdict(report)


def test_default_grid():
    grid = default_grid(40.0)
    assert len(grid) == 8
    assert grid[0] == pytest.approx(4.0)
    assert grid[-1] == pytest.approx(40.0)


def test_uniqueness_of_the_counterexample_pair():
    result = uniqueness_details(F45(), G9(), 40.0)
    assert result.verdict == DISTINCT
    assert result.A_difference > 0.05
    assert uniqueness_check(F45(), G9(), 40.0) == DISTINCT


def test_uniqueness_of_identical_functions():
    assert uniqueness_check(F45(), F45(), 20.0) == IDENTICAL


def test_uniqueness_hypotheses():
    with pytest.raises(HypothesisViolation):
        uniqueness_check(F45(), as_oracle(make_sum([(0, 2), (math.log(4), 2)])), 20.0)
    with pytest.raises(HypothesisViolation):
        uniqueness_check(exp_polynomial_oracle([0, 0, 1e-3]), exp_polynomial_oracle([0, 0, 1e-3]), 20.0)


def test_shared_value():
    F = as_oracle(make_sum([(0, 1), (math.log(2), 1)]))
    G = as_oracle(make_sum([(0, 1), (math.log(3), 1)]))
    assert shared_value_check(F, G, 2.0, 40.0) == DISTINCT


def test_enough_common_zeros(pair_zeros):
    zerosF, _ = pair_zeros
    same = enough_common_zeros(zerosF, zerosF, T_GRID)
    assert same.o_r_verdict
    assert all(n == 0 for n in same.n_E)
    zerosF, zerosG = pair_zeros
    different = enough_common_zeros(zerosF, zerosG, T_GRID)
    assert not different.o_r_verdict
    assert different.to_dict()["n_E"][10] == 22


SHARED_ZEROS = [1 + 1j, -2 + 0.5j, 3j, 1 - 4j]


def test_same_zeros_different_functions_is_inconclusive():
    # both factors are zero-free in |s| <= 5 and tend to 1
    F = product_oracle(weierstrass_oracle(SHARED_ZEROS), as_oracle(make_sum([(0, 1), (1, 1e-3)])))
    G = product_oracle(weierstrass_oracle(SHARED_ZEROS), as_oracle(make_sum([(0, 1), (1, -1e-3)])))
    result = uniqueness_details(F, G, 5.0)
    assert result.verdict == INCONCLUSIVE
    assert not any(result.report.D_values)
    assert not any(result.quotient_counts)
    assert len(result.report.matched_pairs) == len(SHARED_ZEROS)


def test_three_extra_zeros_are_o_of_T(pair_zeros):
    zerosF, _ = pair_zeros
    extra = [(2.0 + 1.0j, 1), (-3.0 + 0.5j, 1), (1.0 - 6.0j, 1)]
    estimate = enough_common_zeros(zerosF, list(zerosF) + extra, T_GRID)
    assert estimate.n_E == [3] * len(T_GRID)
    assert estimate.o_r_verdict


lattice = st.tuples(st.integers(-10, 10), st.integers(-10, 10)).filter(lambda p: p != (0, 0))
multisets = st.dictionaries(lattice, st.integers(1, 3), max_size=15)


@settings(max_examples=50, deadline=None)
@given(multisets, multisets, st.lists(st.floats(0.5, 20.0), min_size=1, max_size=10, unique=True))
def test_symmetric_difference_invariants(F, G, radii):
    T_grid = sorted(radii)
    zerosF = [(complex(m, n), k) for (m, n), k in F.items()]
    zerosG = [(complex(m, n), k) for (m, n), k in G.items()]
    report = symmetric_difference(zerosF, zerosG, T_grid)
    assert all(b >= a for a, b in zip(report.D_values, report.D_values[1:]))
    T = T_grid[-1]
    expected = sum(abs(F.get(p, 0) - G.get(p, 0)) for p in set(F) | set(G) if abs(complex(*p)) <= T)
    assert report.D_values[-1] == expected
    estimate = enough_common_zeros(zerosF, zerosG, T_grid)
    assert all(e <= d for e, d in zip(estimate.n_E, report.D_values))
