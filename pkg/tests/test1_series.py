import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirichletlib.engine.errors import InvalidSeries, ToleranceUnattainable, ValidityExceeded
from dirichletlib.series import (ExponentialSum, TailBound, make_sum, evaluate, derivative, evaluate_array,
                                 origin_derivatives)
from tests.enablelog import banner

LN2 = math.log(2)


def one_plus_2pow():
    return make_sum([(0, 1), (LN2, 1)])


def test_evaluate_at_origin():
    banner("evaluate 1 + 2^-s")
    value, bound = evaluate(one_plus_2pow(), 0)
    assert value == 2
    assert bound < 1e-14


def test_evaluate_matches_closed_form():
    s = 0.3 + 4.1j
    value, bound = evaluate(one_plus_2pow(), s)
    assert abs(value - (1 + 2 ** -s)) <= bound + 1e-15


def test_derivative_matches_closed_form():
    s = -0.7 + 2.5j
    value, bound = derivative(one_plus_2pow(), s)
    assert abs(value - (-LN2 * 2 ** -s)) <= bound + 1e-14


def test_zero_of_one_plus_2pow():
    value, _ = evaluate(one_plus_2pow(), 1j * math.pi / LN2)
    assert abs(value) < 1e-14


def test_exponential_convention():
    f = make_sum([(0, 1), (1, -1)], "exponential")
    value, _ = evaluate(f, 1.0)
    assert abs(value - (1 - math.e)) < 1e-14
    assert f.limit_at_plus_infinity is None


def test_rejects_unordered_exponents():
    with pytest.raises(InvalidSeries):
        make_sum([(1.0, 1), (0.5, 1)])


def test_rejects_repeated_exponents():
    with pytest.raises(InvalidSeries):
        make_sum([(0.0, 1), (0.0, 2)])


def test_rejects_empty_and_zero_sums():
    with pytest.raises(InvalidSeries):
        make_sum([])
    with pytest.raises(InvalidSeries):
        make_sum([(0, 0), (1, 0)])


def test_rejects_unknown_convention():
    with pytest.raises(InvalidSeries):
        make_sum([(0, 1)], "laplace")


def test_single_term_sum_is_trivial():
    f = make_sum([(1, 1)])
    assert f.trivial
    assert f.limit_at_plus_infinity == 0
    assert not one_plus_2pow().trivial


def test_limit_and_normalisation():
    f = make_sum([(1.0, 3), (2.5, -1)])
    assert f.limit_at_plus_infinity == 0
    assert f.leading_exponent == 1.0
    g = f.normalized()
    assert g.limit_at_plus_infinity == 3
    assert g.lambdas.tolist() == [0.0, 1.5]


def test_normalised_sum_has_same_zeros():
    f = make_sum([(1.0, 1), (1.0 + LN2, 1)])
    s = 1j * math.pi / LN2
    value, _ = evaluate(f.normalized(), s)
    assert abs(value) < 1e-14


def test_tolerance_unattainable_reports_bound():
    f = make_sum([(0, 1), (40.0, 1)])
    with pytest.raises(ToleranceUnattainable) as e:
        evaluate(f, 0.5, tol=1e-30)
    assert e.value.achievable > 1e-30


def test_extended_precision_path_agrees():
    f = make_sum([(0, 1), (LN2, 1), (math.log(3), 0.5)])
    s = 1.5 - 7.0j
    fast, _ = evaluate(f, s)
    slow, bound = evaluate(f, s, dps=40)
    assert abs(fast - slow) < 1e-13
    assert bound < 1e-14


def test_tail_bound_region():
    zeta_head = make_sum([(math.log(n), 1) for n in range(1, 51)], tail_bound=TailBound(1.0, 1.0))
    assert zeta_head.abscissa == 1.0
    with pytest.raises(ValidityExceeded):
        evaluate(zeta_head, 1.05)
    value, bound = evaluate(zeta_head, 3.0)
    assert abs(value - 1.2020569031595942) <= bound


def test_tail_bound_only_in_dirichlet_form():
    with pytest.raises(InvalidSeries):
        ExponentialSum([(0, 1), (1, 1)], "exponential", TailBound(1.0, 1.0))


def test_origin_derivatives():
    f = make_sum([(0, 1), (LN2, 1)])
    d = origin_derivatives(f, 3)
    assert d[0] == 2
    assert abs(d[1] + LN2) < 1e-15
    assert abs(d[2] - LN2 ** 2) < 1e-15


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 5), st.floats(-2, 2), st.floats(-2, 2)), min_size=1, max_size=6,
                unique_by=lambda t: round(t[0], 6)),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_vectorised_matches_termwise(raw, s):
    raw = sorted(raw, key=lambda t: t[0])
    if any(b[0] - a[0] < 1e-6 for a, b in zip(raw, raw[1:])) or all(re == 0 and im == 0 for _, re, im in raw):
        return
    f = make_sum([(lam, complex(re, im)) for lam, re, im in raw])
    values, bounds = evaluate_array(f, np.array([s]))
    direct = sum(complex(re, im) * cmath.exp(-lam * s) for lam, re, im in raw)
    assert abs(values[0] - direct) <= bounds[0] + 1e-12 * (1 + abs(direct))
