"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from gaussdio.gint import GaussianInt

small_ints = st.integers(min_value=-10**6, max_value=10**6)
big_ints = st.integers(min_value=-10**40, max_value=10**40)


def gaussian(ints=small_ints):
    return st.builds(GaussianInt, ints, ints)


nonzero_gaussian = gaussian().filter(bool)


def family_k(radius: int = 60):
    """Gaussian k with |k| <= radius outside {0, 1, -1}."""
    r = st.integers(min_value=-radius, max_value=radius)
    return st.builds(GaussianInt, r, r).filter(
        lambda k: k.norm() <= radius * radius and k not in (GaussianInt(0), GaussianInt(1), GaussianInt(-1)))


def large_k(lo: int = 18, hi: int = 60):
    r = st.integers(min_value=-hi, max_value=hi)
    return st.builds(GaussianInt, r, r).filter(lambda k: lo * lo <= k.norm() <= hi * hi)
