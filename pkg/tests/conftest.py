from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-30, max_value=30)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))
positive_rationals = st.builds(Fraction, st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=12))


def coords(dim):
    return st.lists(rationals, min_size=dim, max_size=dim)


@pytest.fixture
def plane():
    from opgeo.model import Frame

    return Frame(2, name="plane")


@pytest.fixture
def space():
    from opgeo.model import Frame

    return Frame(3, name="space")
