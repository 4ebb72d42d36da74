from fractions import Fraction

from hypothesis import strategies as st

from gausspicard.exact_arith import GaussInt, GaussRat

small = st.integers(-50, 50)
gauss_ints = st.builds(GaussInt, small, small)
rats = st.builds(Fraction, small, st.integers(1, 12))
gauss_rats = st.builds(GaussRat.from_parts, rats, rats)


def cmul(a, b):
    """Reference complex product on pairs of Fractions."""
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def pair(z: GaussRat):
    return (z.real, z.imag)
