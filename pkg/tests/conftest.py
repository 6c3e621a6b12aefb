import pytest

from quartic_cm.mp import PrecisionContext


@pytest.fixture
def ctx():
    return PrecisionContext(128)
