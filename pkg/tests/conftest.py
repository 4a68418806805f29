import pytest

from tests import context  # noqa: F401
from tests.enablelog import start_log


@pytest.fixture(scope="session", autouse=True)
def script_log():
    sl = start_log()
    sl.log.info("Starting Test...")
    yield sl
    sl.close()
