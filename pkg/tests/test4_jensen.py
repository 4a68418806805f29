import math

import pytest

from dirichletlib.engine.errors import InvalidArgument
from dirichletlib.jensen import jensen_check, jensen_residual, poisson_jensen_check, poisson_jensen_residual
from dirichletlib.oracle import as_oracle, geometric_oracle, quotient_oracle
from dirichletlib.series import make_sum
from tests.enablelog import banner

LN2 = math.log(2)

ORACLES = {
    "1+2^-s": lambda: as_oracle(make_sum([(0, 1), (LN2, 1)])),
    "1-e^-s": lambda: as_oracle(make_sum([(0, 1), (1, -1)])),
    "1/(1-e^-s)": geometric_oracle,
    "1+2*4^-s": lambda: as_oracle(make_sum([(0, 1), (math.log(4), 2)])),
}


@pytest.mark.parametrize("name", sorted(ORACLES))
@pytest.mark.parametrize("R", [2.0, 3.0, 5.0])
def test_jensen_residual(name, R):
    banner("Jensen " + name + " R=" + str(R))
    assert jensen_residual(ORACLES[name](), R) < 1e-7


def test_jensen_check_reports_both_sides():
    check = jensen_check(ORACLES["1+2^-s"](), 5.0)
    assert check.converged
    assert check.lhs == pytest.approx(math.log(2))
    assert float(check) == check.residual


def test_jensen_with_zero_on_the_circle():
    check = jensen_check(ORACLES["1-e^-s"](), 2 * math.pi)
    assert check.radius > 2 * math.pi
    assert check.residual < 1e-6


def test_jensen_for_a_quotient():
    q = quotient_oracle(ORACLES["1+2^-s"](), ORACLES["1+2*4^-s"]())
    assert jensen_residual(q, 6.0) < 1e-7


@pytest.mark.parametrize("name", sorted(ORACLES))
def test_poisson_jensen_residual(name):
    assert poisson_jensen_residual(ORACLES[name](), 0.3 + 0.2j, 3.0) < 1e-7


def test_poisson_jensen_far_from_the_origin():
    check = poisson_jensen_check(ORACLES["1+2^-s"](), 1.0 - 3.5j, 6.0)
    assert check.residual < 1e-7
    assert check.lhs == pytest.approx(math.log(abs(1 + 2 ** -(1.0 - 3.5j))))


def test_poisson_jensen_rejects_bad_points():
    with pytest.raises(InvalidArgument):
        poisson_jensen_check(ORACLES["1+2^-s"](), 4.0, 3.0)
    with pytest.raises(InvalidArgument):
        poisson_jensen_check(ORACLES["1-e^-s"](), 0.0, 3.0)
