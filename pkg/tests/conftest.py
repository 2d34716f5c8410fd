import math

import pytest

from g3geom import CurveSpec, SurfaceSpec, TraceSpec
from g3geom.verify import random_corpus


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture(scope="session")
def plane():
    return SurfaceSpec.from_strings("u1", "u2", "0", ((-1.0, 3.0), (-1.0, 6.0)))


@pytest.fixture(scope="session")
def cylinder():
    return SurfaceSpec.from_strings("u1", "sin(u2)", "cos(u2)",
                                    ((0.0, 2.0), (0.0, 2.0 * math.pi)))


@pytest.fixture(scope="session")
def cubic_curve():
    # alpha = (s, s^2/2, s^3/6): kappa = sqrt(1+s^2), tau = 1/(1+s^2)
    return CurveSpec.from_strings("s^2/2", "s^3/6", (0.0, 2.0))


@pytest.fixture()
def helix_trace():
    return TraceSpec.from_strings("s", "s", (0.0, 2.0))
