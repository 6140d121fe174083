import pytest
from hypothesis import HealthCheck, settings

from modvals import kernels

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    """Each kernel implementation in turn."""
    return kernels.backends()[request.param]


@pytest.fixture(scope="session")
def fam11():
    from modvals.config import family

    return family(11, 60, 20)


@pytest.fixture(scope="session")
def fam27():
    from modvals.config import family

    return family(27, 60, 20)


@pytest.fixture(scope="session")
def fam31():
    from modvals.config import family

    return family(31, 60, 20)
