import random

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def random_sample(rng, n, lo=-10.0, hi=10.0):
    out = []
    for _ in range(n):
        a, b = sorted((rng.uniform(lo, hi), rng.uniform(lo, hi)))
        out.append((a, b))
    return out


def random_samples(seed, count, n_max=15):
    rng = random.Random(seed)
    return [random_sample(rng, rng.randint(1, n_max)) for _ in range(count)]


coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw):
    a, b = draw(coord), draw(coord)
    return (min(a, b), max(a, b))


samples = st.lists(intervals(), min_size=1, max_size=12)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens", action="store_true", help="rewrite CLI golden files instead of comparing"
    )
