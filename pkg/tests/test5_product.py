import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dirichletlib.counting import count_in_disk, locate_values
from dirichletlib.engine.errors import InvalidArgument
from dirichletlib.product import GenusOneProduct, weierstrass_oracle, counting_integrals, growth_bound_check
from tests.enablelog import banner


def direct_product(zeros, s):
    value = 1 + 0j
    for w in zeros:
        value *= (1 - s / w) * cmath.exp(s / w)
    return value


def test_product_of_conjugate_pair():
    banner("genus one product")
    value, bound = GenusOneProduct([1j, -1j]).evaluate(1)
    assert abs(value - 2.0) <= bound + 1e-14


def test_long_product_matches_direct_multiplication():
    rng = np.random.default_rng(7)
    zeros = (rng.uniform(1, 4, 30) * np.exp(2j * math.pi * rng.uniform(size=30))).tolist()
    f = weierstrass_oracle(zeros)
    assert f.size == 30
    s = 1.7 - 0.6j
    value, _ = f.evaluate(s)
    assert value == pytest.approx(direct_product(zeros, s), rel=1e-10)


def test_product_vanishes_exactly_at_its_zeros():
    f = weierstrass_oracle([2.0, 2.0, -1 + 3j])
    assert f.evaluate(2.0)[0] == 0
    records = locate_values(f, 5.0)
    assert sorted(rec.multiplicity for rec in records) == [1, 2]
    assert count_in_disk(f, 5.0).count == 3
    assert f.origin_order == 0


def test_derivative_at_a_simple_zero():
    f = weierstrass_oracle([1.0, 3.0])
    d, _ = f.derivative(1.0)
    expected = -math.e * (1 - 1 / 3) * math.exp(1 / 3)
    assert d == pytest.approx(expected)


def test_product_rejects_zero_at_origin():
    with pytest.raises(InvalidArgument):
        weierstrass_oracle([0.0, 1.0])


def test_counting_integrals():
    first, second = counting_integrals([1.0], 2.0)
    assert first == pytest.approx(2.0 * (1.0 - 0.5))
    assert second == pytest.approx(4.0 / (2.0 * 4.0))


def test_growth_bound_worked_example():
    lhs, rhs = growth_bound_check([10], 1)
    assert round(rhs, 4) == 0.0539
    assert lhs == pytest.approx(math.log(0.9) + 0.1)
    assert lhs <= rhs


def test_growth_bound_example_with_small_zero():
    lhs, rhs = growth_bound_check([1], -1)
    assert rhs == pytest.approx(4 * (2 + math.log(2)) * 0.5)
    assert round(rhs, 3) == 5.386
    assert lhs == pytest.approx(math.log(2) - 1)
    assert lhs <= rhs


def test_growth_bound_at_a_zero():
    lhs, _ = growth_bound_check([2.0, 3j], 3j)
    assert lhs == -math.inf


def test_growth_bound_rejects_the_origin():
    with pytest.raises(InvalidArgument):
        growth_bound_check([1.0], 0)
    with pytest.raises(InvalidArgument):
        growth_bound_check([0.0], 1.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.complex_numbers(min_magnitude=0.5, max_magnitude=20, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=20),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=30, allow_nan=False, allow_infinity=False))
def test_growth_bound_holds(zeros, s):
    lhs, rhs = growth_bound_check(zeros, s)
    assert lhs <= rhs + 1e-9 * max(1.0, abs(rhs))
