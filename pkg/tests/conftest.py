import pytest

from cavity_squeezing import SystemParams


@pytest.fixture
def canonical():
    """The parameter point used for most frozen expectations."""
    return SystemParams.from_gamma_c(0.4, 0.8, 0.2)
