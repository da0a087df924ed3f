import numpy as np
import pytest
from hypothesis import given, settings

from hvlab import operators, series
from hvlab.catalog import FunctionSpec, realize
from hvlab.series import TaylorSeries

from .strategies import polynomials


def test_volterra_of_neg_log_on_a_monomial():
  g = realize(FunctionSpec.neg_log(), 16)
  out = operators.volterra(g, TaylorSeries.monomial(3, 16))
  # T_g z^3 = sum_{m >= 4} z^m / m
  assert not np.any(out.coeffs[:4])
  m = np.arange(4, 20)
  np.testing.assert_allclose(out.coeffs[4:20], 1 / m, rtol=1e-15)


def test_volterra_with_constant_symbol_vanishes():
  out = operators.volterra(TaylorSeries.constant(3.0), TaylorSeries([1.0, 2.0]))
  assert not np.any(out.coeffs)


@settings(deadline=None)
@given(polynomials(max_order=64))
def test_cesaro_is_volterra_of_neg_log(f):
  _, report = operators.apply(operators.CESARO, None, f)
  assert report.residuals['cesaro_identity'] <= 1e-13


def test_cesaro_of_geometric_series():
  out = operators.cesaro(TaylorSeries(np.ones(8)))
  np.testing.assert_allclose(out.coeffs, np.ones(8))


@settings(deadline=None)
@given(polynomials(), polynomials())
def test_integration_by_parts(g, f):
  assert operators.ibp_defect(g, f) <= 1e-12


@given(polynomials(), polynomials())
def test_multiplication_commutes(g, f):
  assert np.array_equal(operators.multiply(g, f).coeffs,
                        operators.multiply(f, g).coeffs)


def test_companion_on_monomial_matches_companion():
  f = TaylorSeries(np.linspace(1.0, 2.0, 11))
  n = 3
  direct = operators.companion(f, TaylorSeries.monomial(n))
  np.testing.assert_allclose(
    direct.coeffs[n:n + 11],
    operators.companion_on_monomial(f, n).coeffs, atol=1e-15)
  with pytest.raises(ValueError):
    operators.companion_on_monomial(f, 0)


def test_volterra_inverts_reciprocal_product():
  s = realize(FunctionSpec.singular_inner(), 64)
  primitive = series.antiderivative(s)
  out = operators.volterra(primitive, series.reciprocal(s))
  expected = np.zeros(17)
  expected[1] = 1.0
  np.testing.assert_allclose(out.coeffs[:17], expected, atol=1e-9)


def test_cap_is_reported():
  g = TaylorSeries(np.ones(5))
  f = TaylorSeries(np.ones(5))
  out, report = operators.multiply(g, f, cap=3, report=True)
  assert out.order == 3
  assert report.discarded == 5
  assert report.valid_order == 3
  assert report.to_dict()['operator'] == operators.MG


def test_apply_records_ibp_defect():
  g = realize(FunctionSpec.neg_log(), 32)
  f = realize(FunctionSpec.binomial_power(-0.25), 32)
  out, report = operators.apply(operators.TG, g, f)
  assert out.order == 64
  assert 0 <= report.residuals['ibp_defect'] <= 1e-12


def test_apply_unknown_operator():
  with pytest.raises(ValueError, match='unknown operator'):
    operators.apply('Vg', TaylorSeries.unit(), TaylorSeries.unit())
