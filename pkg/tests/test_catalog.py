import math

import numpy as np
import pytest
from scipy import special

from hvlab import catalog, series
from hvlab.catalog import CATALOG, FunctionSpec, realize
from hvlab.config import Config
from hvlab.errors import InvalidSpec, OrderOverflow


def _contour_coefficients(fn, count, radius=0.9):
  """Taylor coefficients by the trapezoid rule on |z| = radius."""
  z = radius * np.exp(2j * np.pi * np.arange(count) / count)
  return np.fft.fft(fn(z)) / count / radius ** np.arange(count)


def test_neg_log_coefficients():
  f = realize(FunctionSpec.neg_log(), 3)
  np.testing.assert_allclose(f.coeffs, [0, 1, 1 / 2, 1 / 3])


def test_monomial_above_order_is_zero():
  f = realize(FunctionSpec.monomial(9), 4)
  assert f.order == 4 and not np.any(f.coeffs)


def test_singular_inner_constant_term():
  f = realize(FunctionSpec.singular_inner(), 64)
  assert f.coeffs[0] == pytest.approx(math.exp(-1), rel=1e-15)


def test_singular_inner_matches_closed_form():
  f = realize(FunctionSpec.singular_inner(), 256)
  z = np.array([0.3, -0.2 + 0.1j, 0.25j])
  np.testing.assert_allclose(
    series.evaluate_many(f, z), np.exp((z + 1) / (z - 1)), atol=1e-12)


def test_binomial_power_matches_contour_integral():
  f = realize(FunctionSpec.binomial_power(-1.25), 64)
  expected = _contour_coefficients(lambda z: (1 - z) ** -1.25, 4096)[:65]
  np.testing.assert_allclose(f.coeffs, expected, atol=1e-10)


def test_binomial_power_with_integer_exponent_is_exact():
  f = realize(FunctionSpec.binomial_power(2), 5)
  assert f.coeffs.tolist() == [1, -2, 1, 0, 0, 0]
  assert f.tail_hint.kind == series.EXACT


def test_binomial_tail_hint_with_complex_exponent():
  # |a_k| sqrt(k) increases to 1/|Gamma(0.5 - 2i)|, far above 1/Gamma(0.5).
  alpha = -0.5 + 2j
  f = realize(FunctionSpec.binomial_power(alpha), 64)
  limit = 1 / abs(special.gamma(-alpha))
  assert f.tail_hint.log_scale >= math.log(limit) - 1e-12

  far = realize(FunctionSpec.binomial_power(alpha), 4096)
  k = np.arange(65, 4097)
  assert np.all(np.abs(far.coeffs[65:]) <= f.tail_hint.bound(k) * (1 + 1e-9))


def test_shifted_binomial_power():
  f = realize(FunctionSpec.shifted_binomial_power(-0.5, -2.0), 128)
  z = np.array([0.5, -0.5, 0.4j])
  np.testing.assert_allclose(
    series.evaluate_many(f, z), (1 + z / 2) ** -0.5, atol=1e-13)


def test_blaschke_factor_matches_closed_form():
  a = 0.3 + 0.4j
  f = realize(FunctionSpec.blaschke_factor(a), 128)
  z = np.array([0.1, 0.6j, -0.5 + 0.2j])
  np.testing.assert_allclose(
    series.evaluate_many(f, z), (a - z) / (1 - np.conj(a) * z), atol=1e-13)


def test_blaschke_factor_at_origin():
  f = realize(FunctionSpec.blaschke_factor(0), 3)
  assert f.coeffs.tolist() == [0, -1, 0, 0]


def test_outer_function_matches_closed_form():
  f = realize(FunctionSpec.outer_three_minus_log(), 256)
  z = np.array([0.5, -0.5, 0.3 + 0.3j])
  np.testing.assert_allclose(
    series.evaluate_many(f, z), 1 / (3 - np.log(1 - z)), atol=1e-12)


def test_power_of_log_witness_factor():
  spec = FunctionSpec.power(catalog.log_e_over_one_minus_z(), 0.75)
  f = realize(spec, 256)
  z = np.array([0.3, -0.4, 0.2j])
  np.testing.assert_allclose(
    series.evaluate_many(f, z), (1 - np.log(1 - z)) ** 0.75, atol=1e-12)


def test_integral_differentiates_back():
  f = realize(FunctionSpec.integral(FunctionSpec.neg_log()), 32)
  assert f.coeffs[0] == 0
  np.testing.assert_allclose(
    series.differentiate(f).coeffs,
    realize(FunctionSpec.neg_log(), 31).coeffs, atol=1e-15)


def test_product_and_linear_combo():
  one_plus_z = FunctionSpec.linear_combo([
    (1, FunctionSpec.monomial(0)), (1, FunctionSpec.monomial(1))])
  f = realize(FunctionSpec.product([one_plus_z, one_plus_z]), 4)
  np.testing.assert_allclose(f.coeffs, [1, 2, 1, 0, 0])


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_catalog_realizes(name):
  f = realize(CATALOG[name], 64)
  assert f.order == 64
  assert np.all(np.isfinite(f.coeffs))


@pytest.mark.parametrize('build', [
  lambda: FunctionSpec.shifted_binomial_power(-0.5, 0.5),
  lambda: FunctionSpec.blaschke_factor(1.0),
  lambda: FunctionSpec('cosine'),
  lambda: FunctionSpec.monomial(-1),
  lambda: FunctionSpec.monomial(True),
  lambda: FunctionSpec.product([]),
  lambda: FunctionSpec('power', alpha=0.5),
])
def test_invalid_specs(build):
  with pytest.raises(InvalidSpec):
    build()


def test_reciprocal_of_vanishing_series():
  spec = FunctionSpec.reciprocal(FunctionSpec.monomial(1))
  with pytest.raises(InvalidSpec):
    realize(spec, 8)


def test_power_rejects_branch_cut():
  base = FunctionSpec.linear_combo([
    (-1, FunctionSpec.monomial(0)), (0.5, FunctionSpec.monomial(1))])
  with pytest.raises(InvalidSpec, match='branch cut'):
    realize(FunctionSpec.power(base, 0.5), 16)


def test_power_rejects_vanishing_base():
  with pytest.raises(InvalidSpec):
    realize(FunctionSpec.power(FunctionSpec.monomial(1), 0.5), 16)


def test_realize_order_checks(monkeypatch):
  with pytest.raises(TypeError):
    realize(FunctionSpec.neg_log(), 2.0)
  with pytest.raises(InvalidSpec):
    realize(FunctionSpec.neg_log(), -1)
  monkeypatch.setattr(Config, 'MAX_ORDER', 16)
  with pytest.raises(OrderOverflow):
    realize(FunctionSpec.neg_log(), 17)


def test_parse_forms():
  assert FunctionSpec.parse('neg_log') == FunctionSpec.neg_log()
  assert FunctionSpec.parse('neg_log_one_minus_z') == FunctionSpec.neg_log()
  assert FunctionSpec.parse(' psi ') == FunctionSpec.outer_three_minus_log()
  assert FunctionSpec.parse('{"kind": "monomial", "n": 5}') \
    == FunctionSpec.monomial(5)
  assert FunctionSpec.parse(
    '{"kind": "blaschke_factor", "a": [0.3, 0.4]}'
  ) == FunctionSpec.blaschke_factor(0.3 + 0.4j)


@pytest.mark.parametrize('text', [
  '{"kind": "monomial", "n": 5',
  '{"kind": "neg_log", "scale": 2}',
  '{"n": 5}',
  '{"kind": "blaschke_factor", "a": [0.1, 0.2, 0.3]}',
  '{"kind": "linear_combo", "terms": [{"coef": 1}]}',
  '[1, 2]',
])
def test_parse_rejects(text):
  with pytest.raises(InvalidSpec):
    FunctionSpec.parse(text)


def test_nested_spec_survives_json():
  spec = catalog.log_power_witness(2)
  assert FunctionSpec.parse(spec.to_json()) == spec


def test_describe():
  assert FunctionSpec.monomial(3).describe() == 'z^3'
  assert FunctionSpec.binomial_power(-0.25).describe() == '(1-z)^-0.25'
  assert FunctionSpec.reciprocal(FunctionSpec.neg_log()).describe() \
    == '1/(-log(1-z))'


def test_regression_pairs_name_catalog_entries():
  for g, f in catalog.REGRESSION_PAIRS:
    assert g in CATALOG and f in CATALOG
