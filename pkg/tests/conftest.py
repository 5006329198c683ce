import sys

import pytest
from hypothesis import HealthCheck, settings

from cplkit import RUNNING_FRAME, build_frame

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))

settings.register_profile("default", deadline=None, max_examples=150,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def running():
    return RUNNING_FRAME


@pytest.fixture
def chain():
    return build_frame(["a", "b"], [("a", "b")])


@pytest.fixture
def single():
    return build_frame(["w"], [])
