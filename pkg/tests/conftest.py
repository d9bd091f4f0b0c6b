import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from kresling.config import load_config
from kresling.geometry import ModulePattern

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

IB_PATTERN = ModulePattern(20.0, 40.0, 44.7, 53.0)
IA_PATTERN = ModulePattern(18.0, 18.0, 27.6, 45.0)


@pytest.fixture
def ib():
    return IB_PATTERN


@pytest.fixture
def ia():
    return IA_PATTERN


@pytest.fixture(scope="session")
def ib_spec():
    return load_config("IB").actuator()


@pytest.fixture(scope="session")
def ia_spec():
    return load_config("IA").actuator()


def ring_points(a, h, n, theta):
    """Independent vertex construction: bottom ring, top ring (lists of arrays)."""
    bottom = [np.array([a * math.sin(2 * math.pi * k / n), 0.0, a * math.cos(2 * math.pi * k / n)])
              for k in range(n)]
    top = [np.array([a * math.sin(2 * math.pi * k / n + theta), h,
                     a * math.cos(2 * math.pi * k / n + theta)]) for k in range(n)]
    return bottom, top
