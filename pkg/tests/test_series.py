import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy import special

from hvlab import series
from hvlab.config import Config
from hvlab.errors import InvalidSpec, OrderOverflow, RadiusOutOfRange
from hvlab.series import TailHint, TaylorSeries

from .strategies import disk_points, polynomials


def test_rejects_empty_and_nonfinite():
  with pytest.raises(ValueError):
    TaylorSeries([])
  with pytest.raises(ValueError):
    TaylorSeries([1.0, np.inf])


def test_order_overflow(monkeypatch):
  monkeypatch.setattr(Config, 'MAX_ORDER', 8)
  with pytest.raises(OrderOverflow):
    TaylorSeries(np.zeros(10))


def test_coefficients_are_read_only():
  f = TaylorSeries([1.0, 2.0])
  with pytest.raises(ValueError):
    f.coeffs[0] = 3.0


def test_hint_must_dominate_stored_coefficients():
  with pytest.raises(InvalidSpec):
    TaylorSeries([1.0, 5.0], TailHint.geometric(1.0, 2.0))


def test_truncate_and_pad():
  f = TaylorSeries([1.0, 2.0, 3.0], TailHint.exact())
  assert f.truncate(1).coeffs.tolist() == [1, 2]
  assert f.truncate(4).coeffs.tolist() == [1, 2, 3, 0, 0]
  # Dropping nonzero coefficients loses exactness.
  assert f.truncate(1).tail_hint.heuristic


def test_shift():
  f = series.shift(TaylorSeries([1.0, 2.0]), 2)
  assert f.coeffs.tolist() == [0, 0, 1, 2]


def test_product_of_binomials():
  f = TaylorSeries([1.0, 1.0], TailHint.exact())
  g = TaylorSeries([1.0, -1.0], TailHint.exact())
  product = f * g
  assert product.coeffs.tolist() == [1, 0, -1]
  assert product.tail_hint.kind == series.EXACT


@given(polynomials(), polynomials())
def test_product_is_bitwise_commutative(f, g):
  assert np.array_equal(series.cauchy_product(f, g).coeffs,
                        series.cauchy_product(g, f).coeffs)


@given(polynomials(max_order=40), polynomials(max_order=40))
def test_sparse_and_dense_products_agree(f, g):
  expected = np.convolve(f.coeffs, g.coeffs)
  np.testing.assert_allclose(
    series.cauchy_product(f, g).coeffs, expected, atol=1e-12)


def test_linear_combine_pads_shorter_inputs():
  f = series.linear_combine([
    (2, TaylorSeries([1.0])), (1, TaylorSeries([0.0, 0.0, 1.0]))])
  assert f.coeffs.tolist() == [2, 0, 1]


def test_reciprocal_of_one_minus_z():
  f = series.reciprocal(TaylorSeries([1.0, -1.0]), order=10)
  np.testing.assert_allclose(f.coeffs, np.ones(11))


def test_reciprocal_needs_constant_term():
  with pytest.raises(InvalidSpec):
    series.reciprocal(TaylorSeries([0.0, 1.0]))


def test_log_of_one_minus_z():
  f = series.series_log(TaylorSeries([1.0, -1.0]), order=12)
  k = np.arange(1, 13)
  np.testing.assert_allclose(f.coeffs[1:], -1 / k, atol=1e-15)
  assert f.coeffs[0] == 0


def test_exp_inverts_log():
  f = TaylorSeries([2.0, 0.5, -0.25, 0.125])
  back = series.series_exp(series.series_log(f, 24))
  expected = np.zeros(25)
  expected[:4] = [2.0, 0.5, -0.25, 0.125]
  np.testing.assert_allclose(back.coeffs, expected, atol=1e-12)


def test_pow_matches_binomial_series():
  f = series.series_pow(TaylorSeries([1.0, -1.0]), 0.5, order=20)
  k = np.arange(21)
  expected = special.binom(0.5, k) * (-1.0) ** k
  np.testing.assert_allclose(f.coeffs, expected, atol=1e-14)


@given(polynomials())
def test_differentiate_inverts_antiderivative(f):
  back = series.differentiate(series.antiderivative(f))
  np.testing.assert_allclose(back.coeffs, f.coeffs, atol=1e-15)


def test_differentiate_constant():
  d = series.differentiate(TaylorSeries([3.0]))
  assert d.order == 0 and d.coeffs[0] == 0


@settings(deadline=None)
@given(polynomials(max_order=12), disk_points())
def test_evaluation_paths_agree(f, z):
  direct = series.evaluate(f, z).value
  plain = series.evaluate_many(f, np.array([z]))[0]
  assert abs(direct - plain) <= 1e-12 * max(1.0, abs(direct))


def test_evaluate_neg_log_within_its_bound():
  k = np.arange(1, 65)
  f = TaylorSeries(np.concatenate([[0.0], 1 / k]),
                   TailHint.polynomial(1.0, -1.0))
  value = series.evaluate(f, 0.5)
  assert value.error < 1e-15
  assert abs(value.value - math.log(2)) <= value.error + 1e-15
  assert not value.heuristic


def test_evaluate_outside_disk():
  with pytest.raises(RadiusOutOfRange):
    series.evaluate(TaylorSeries([1.0]), 1.0)
  with pytest.raises(RadiusOutOfRange):
    series.evaluate_many(TaylorSeries([1.0]), [0.5, 1.5j])


def test_evaluate_on_circle_matches_pointwise():
  f = TaylorSeries([1.0, 2.0, -1.0, 0.5j])
  count = series.circle_size(f.order)
  r = 0.7
  points = r * np.exp(2j * np.pi * np.arange(count) / count)
  np.testing.assert_allclose(
    series.evaluate_on_circle(f, r, count),
    series.evaluate_many(f, points), atol=1e-13)


def test_circle_size():
  assert series.circle_size(10) == Config.MIN_ANGLES
  assert series.circle_size(100) == 256


def test_geometric_tail_closed_form():
  hint = TailHint.geometric(1.0, 2.0)
  # sum_{k >= 4} 2^-k 2^-k
  assert hint.tail(3, 0.5) == pytest.approx(4.0 ** -4 / (1 - 0.25), rel=1e-12)


def test_polynomial_tail_bounds_neg_log():
  order, r = 32, 0.9
  k = np.arange(1, order + 1)
  f = TaylorSeries(np.concatenate([[0.0], 1 / k]),
                   TailHint.polynomial(1.0, -1.0))
  true_tail = -math.log(1 - r) - float(np.sum(r ** k / k))
  bound = series.tail_error(f, r)
  assert true_tail <= bound <= 10 * true_tail


def test_safe_radius():
  assert series.safe_radius(TaylorSeries.monomial(3)) == 1.0
  k = np.arange(1, 65)
  f = TaylorSeries(np.concatenate([[0.0], 1 / k]),
                   TailHint.polynomial(1.0, -1.0))
  r = series.safe_radius(f)
  assert 0 < r < 1
  assert series.tail_error(f, r) <= Config.SAFE_TAIL_TOL


def test_fitted_hint_dominates_coefficients():
  k = np.arange(1, 200)
  coeffs = np.concatenate([[0.0], 1 / k ** 1.5])
  f = TaylorSeries(coeffs)
  hint = f.tail_hint
  assert hint.heuristic
  stored = np.flatnonzero(coeffs)
  assert np.all(np.log(coeffs[stored]) <= hint.log_bound(stored) + 1e-9)


def test_short_series_get_an_exact_heuristic_hint():
  hint = TaylorSeries([1.0, 2.0]).tail_hint
  assert hint.kind == series.EXACT and hint.heuristic


def test_majorant_is_parseval_sum():
  f = TaylorSeries([1.0, -2.0, 3.0])
  r = 0.5
  assert series.majorant(f, r, power=2) == pytest.approx(
    1 + 4 * r ** 2 + 9 * r ** 4)
