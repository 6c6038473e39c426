import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from opuclab.coeffs import VerblunskySequence

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

TWO_PI = 2.0 * math.pi


def disk_points(max_radius=0.95, min_radius=0.0):
    """Complex numbers with modulus in ``[min_radius, max_radius]``."""
    return st.builds(
        lambda r, t: complex(r * math.cos(t), r * math.sin(t)),
        st.floats(min_radius, max_radius), st.floats(0.0, TWO_PI),
    )


def circle_angles():
    return st.floats(0.0, TWO_PI, exclude_max=True)


@st.composite
def sparse_sequences(draw, max_terms=5, max_position=60, max_radius=0.9):
    k = draw(st.integers(0, max_terms))
    positions = sorted(draw(st.sets(st.integers(0, max_position), min_size=k, max_size=k)))
    values = [draw(disk_points(max_radius, 0.01)) for _ in positions]
    return VerblunskySequence.sparse(values, positions)


@st.composite
def explicit_sequences(draw, min_len=1, max_len=24, max_radius=0.9):
    vals = draw(st.lists(disk_points(max_radius), min_size=min_len, max_size=max_len))
    return VerblunskySequence.explicit(vals)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
