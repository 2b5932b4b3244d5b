from fractions import Fraction

from hypothesis import strategies as st

# the sampler's range: numerator in [-20, 20], denominator in [1, 8]
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 8))
small_rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


def non_integer(x: Fraction) -> bool:
    return x.denominator != 1
