import pytest
from hypothesis import HealthCheck, settings

from qinfo.hydrogenic import BoundState

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def states(n_max, signed_m=False):
    return [
        (n, l, m)
        for n in range(1, n_max + 1)
        for l in range(n)
        for m in range(-l if signed_m else 0, l + 1)
    ]


@pytest.fixture
def ground():
    return BoundState(1, 0, 0, 1.0)


@pytest.fixture(params=[(1, 0, 0), (2, 0, 0), (2, 1, 1), (3, 1, 0), (3, 2, 2), (4, 2, 1)], ids=lambda s: "n%dl%dm%d" % s)
def small_state(request):
    return BoundState(*request.param)
