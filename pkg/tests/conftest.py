import math

import numpy as np
import pytest
from hypothesis import strategies as st

from spinorspace.algebra import Spinor


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


finite = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@st.composite
def spinors(draw):
    return Spinor(complex(draw(finite), draw(finite)), complex(draw(finite), draw(finite)))


@st.composite
def off_axis_points(draw, min_rho=1e-3):
    rho = draw(st.floats(min_value=min_rho, max_value=20))
    angle = draw(st.floats(min_value=0, max_value=2 * math.pi, exclude_max=True))
    return (rho * math.cos(angle), rho * math.sin(angle), draw(finite))


def spinor_close(a, b, tol):
    return a.distance(b) <= tol
