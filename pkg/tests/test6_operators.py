import math

import numpy as np
import pytest

from dirichletlib.engine.errors import InvalidArgument, ValidityExceeded, HypothesisViolation
from dirichletlib.operators import lambda_apply, lambda_iterate, check_tau
from dirichletlib.oracle import as_oracle, exp_polynomial_oracle, geometric_oracle, zeta_oracle
from dirichletlib.series import make_sum
from tests.enablelog import banner


def sample_disk(rng, count, radius):
    return radius * np.sqrt(rng.uniform(size=count)) * np.exp(2j * math.pi * rng.uniform(size=count))


def test_lambda_of_exponential_is_constant():
    banner("difference operator")
    g = lambda_iterate(exp_polynomial_oracle([0, 1]), 1.0, 1)
    values, _ = g.evaluate_many(sample_disk(np.random.default_rng(0), 100, 5.0))
    assert np.max(np.abs(values - math.e)) < 1e-9 * math.e


def test_second_iterate_of_gaussian_is_constant():
    g = lambda_iterate(exp_polynomial_oracle([0, 0, 1]), 1.0, 2)
    values, _ = g.evaluate_many(sample_disk(np.random.default_rng(1), 100, 2.0))
    assert np.max(np.abs(values - math.exp(2.0))) < 1e-9 * math.exp(2.0)


def test_lambda_of_a_sum_tends_to_one():
    f = as_oracle(make_sum([(0, 1), (math.log(2), 1)]))
    value, _ = lambda_apply(f).evaluate(40.0)
    assert abs(value - 1.0) < 1e-10


def test_lambda_keeps_the_shift_relation():
    f = as_oracle(make_sum([(0, 1), (math.log(2), 1), (math.log(3), -0.5)]))
    s = 0.4 + 1.1j
    value, _ = lambda_apply(f, 0.25).evaluate(s)
    expected = f.evaluate(s + 0.25)[0] / f.evaluate(s)[0]
    assert value == pytest.approx(expected)


def test_lambda_rejects_bad_arguments():
    f = exp_polynomial_oracle([0, 1])
    with pytest.raises(InvalidArgument):
        lambda_apply(f, 0.0)
    with pytest.raises(InvalidArgument):
        lambda_iterate(f, 0.1, 0)
    with pytest.raises(InvalidArgument):
        lambda_iterate(f, 0.1, 1.5)
    with pytest.raises(ValidityExceeded):
        lambda_apply(zeta_oracle(0.05), 0.1)


def test_check_tau_accepts_zero_free_disk():
    f = as_oracle(make_sum([(0, 1), (math.log(2), 1)]))
    assert check_tau(f, 0.1, 2)


def test_check_tau_names_the_violation():
    with pytest.raises(HypothesisViolation):
        check_tau(as_oracle(make_sum([(0, 1), (1, -1)])), 0.1, 1)
    with pytest.raises(HypothesisViolation):
        check_tau(geometric_oracle(), 0.1, 1)
