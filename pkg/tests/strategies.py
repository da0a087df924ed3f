"""Hypothesis strategies shared by the test modules."""
import numpy as np
from hypothesis import strategies as st

from hvlab.series import TaylorSeries


unit_floats = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


@st.composite
def polynomials(draw, min_order=0, max_order=16):
  """Random complex polynomials with coefficients in the unit square."""
  order = draw(st.integers(min_order, max_order))
  real = draw(st.lists(unit_floats, min_size=order + 1, max_size=order + 1))
  imag = draw(st.lists(unit_floats, min_size=order + 1, max_size=order + 1))
  return TaylorSeries(np.array(real) + 1j * np.array(imag))


@st.composite
def disk_points(draw, radius=0.95):
  r = draw(st.floats(min_value=0.0, max_value=radius))
  t = draw(st.floats(min_value=0.0, max_value=2 * np.pi))
  return complex(r * np.cos(t), r * np.sin(t))
