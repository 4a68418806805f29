import pytest

from dirichletlib.constants import INFINITY
from dirichletlib.counting import count_in_disk, locate_values
from dirichletlib.engine.errors import ValidityExceeded
from dirichletlib.jensen import jensen_residual
from dirichletlib.oracle import zeta_oracle
from tests.enablelog import banner

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def zeta():
    return zeta_oracle()


def test_zeta_counts(zeta):
    banner("zeta")
    assert count_in_disk(zeta, 30.0).count == 21
    assert count_in_disk(zeta, 30.0, INFINITY).count == 1


def test_zeta_zero_positions(zeta):
    records = locate_values(zeta, 30.0)
    assert sum(rec.multiplicity for rec in records) == 21
    first = min((rec.position for rec in records if rec.position.imag > 1), key=lambda p: p.imag)
    assert first.real == pytest.approx(0.5, abs=1e-6)
    assert first.imag == pytest.approx(14.134725, abs=1e-5)


@pytest.mark.parametrize("R", [2.0, 5.0])
def test_zeta_jensen(zeta, R):
    assert jensen_residual(zeta, R) < 1e-7


def test_zeta_validity(zeta):
    with pytest.raises(ValidityExceeded):
        count_in_disk(zeta_oracle(10.0), 20.0)
