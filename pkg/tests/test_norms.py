import json
import math

import numpy as np
import pytest
from hypothesis import given, settings

from hvlab import geometry, norms, series
from hvlab.catalog import FunctionSpec, realize
from hvlab.errors import (
  ConstantSymbol, InvalidSpec, NumericalValidityError, RadiusOutOfRange)
from hvlab.geometry import RadiusLadder
from hvlab.norms import NormEstimate, SpaceSpec
from hvlab.series import TaylorSeries

from .strategies import polynomials


ABSCISSAE = np.arange(1, 9) * math.log(2)


def test_classify_diverging():
  samples = 2.0 ** np.arange(1, 9)
  status, value, _, growth = norms.classify(samples, ABSCISSAE)
  assert status == norms.DIVERGING
  assert value == 256
  assert growth == pytest.approx(1.0, rel=1e-9)


def test_classify_converged_on_small_step():
  status, value, increment, _ = norms.classify([1.0, 1.5, 1.5], ABSCISSAE[:3])
  assert status == norms.CONVERGED
  assert value == 1.5 and increment == 0


def test_classify_extrapolates_geometric_steps():
  samples = 2 - 0.5 ** np.arange(1, 7)
  status, value, remainder, _ = norms.classify(samples, ABSCISSAE[:6])
  assert status == norms.CONVERGED
  assert value == pytest.approx(2.0, rel=1e-12)
  assert remainder == pytest.approx(0.5 ** 6)


def test_classify_inconclusive():
  status, _, _, _ = norms.classify([1.0, 2.0, 1.5, 2.5], ABSCISSAE[:4])
  assert status == norms.INCONCLUSIVE
  status, value, _, _ = norms.classify([3.0], ABSCISSAE[:1])
  assert status == norms.INCONCLUSIVE and value == 3.0


def test_sequence_estimate_keeps_leading_certified_run():
  result = norms.sequence_estimate([1.0, 1.0, 1.0, 5.0], ABSCISSAE[:4], 3)
  assert result.converged
  assert result.value == 1.0
  assert result.extrapolated == (5.0,)
  assert 'past the safe radius' in result.notes[0]


def test_hardy_norm_of_a_monomial_is_exact():
  result = norms.hardy_norm(realize(FunctionSpec.monomial(5), 4096))
  assert result.value == 1.0
  assert result.converged


def test_hardy_norm_of_binomial_power_diverges():
  f = realize(FunctionSpec.binomial_power(-1.25), 4096)
  result = norms.hardy_norm(f)
  assert result.diverging
  assert result.growth_fit == pytest.approx(0.75, abs=0.1)
  assert 0 < result.safe_radius < 1


def test_hardy_norm_of_neg_log():
  result = norms.hardy_norm(realize(FunctionSpec.neg_log(), 4096))
  assert not result.diverging
  assert result.value == pytest.approx(math.pi / math.sqrt(6), rel=1e-2)


@pytest.mark.parametrize('p', [1, 3])
def test_mean_p_of_a_monomial(p):
  f = TaylorSeries.monomial(4)
  assert norms.mean_p(f, 0.8, p) == pytest.approx(0.8 ** 4, rel=1e-12)


def test_mean_p_argument_checks():
  f = TaylorSeries.monomial(1)
  with pytest.raises(RadiusOutOfRange):
    norms.mean_p(f, 1.0, 2)
  with pytest.raises(InvalidSpec):
    norms.mean_p(f, 0.5, 0.5)


def test_certified_mean():
  assert norms.certified_mean(TaylorSeries.monomial(5), 0.9, 2) \
    == pytest.approx(0.9 ** 5, rel=1e-12)
  with pytest.raises(NumericalValidityError):
    norms.certified_mean(realize(FunctionSpec.neg_log(), 16), 0.99, 2)


def test_korenblum_norm_of_binomial_power():
  alpha = 0.5
  f = realize(FunctionSpec.binomial_power(-alpha), 4096)
  result = norms.korenblum_norm(f, alpha)
  # (1 - r^2)^alpha (1 - r)^-alpha = (1 + r)^alpha on the positive axis
  assert result.value == pytest.approx(2 ** alpha, rel=2e-3)
  assert not result.diverging


def test_hinf_norm_of_a_polynomial():
  f = TaylorSeries([1.0, 1.0])
  result = norms.hinf_norm(f, RadiusLadder(10))
  assert result.value == pytest.approx(2.0, rel=2e-3)


def test_growth_parameter_checks():
  f = TaylorSeries.monomial(1)
  with pytest.raises(InvalidSpec):
    norms.korenblum_norm(f, 1.0)
  with pytest.raises(InvalidSpec):
    norms.lipschitz_seminorm(f, 0.0)
  with pytest.raises(ValueError):
    norms.growth_sup(f, -1.0)


def test_bmoa_norm_of_z():
  result = norms.bmoa_norm_mobius(
    realize(FunctionSpec.monomial(1), 64), ladder=RadiusLadder(6), angles=8)
  assert result.value == pytest.approx(1.0, abs=1e-9)
  assert result.converged


def test_mobius_oscillation_closed_form():
  # |z^2|^2 is constant on circles, so the oscillation is r^4 - |a|^4.
  g = TaylorSeries.monomial(2)
  points = np.array([0, 0.3, -0.5j, 0.4 + 0.4j])
  np.testing.assert_allclose(
    norms.mobius_oscillation(g, 0.9, points),
    np.sqrt(0.9 ** 4 - np.abs(points) ** 4), atol=1e-13)
  with pytest.raises(RadiusOutOfRange):
    norms.mobius_oscillation(g, 0.5, [0.6])


def test_mobius_oscillation_matches_composition():
  g = TaylorSeries([1.0, 2.0, 0.0, -1.0, 0.5j])
  r, a = 0.8, 0.3 + 0.2j
  t = 2 * np.pi * np.arange(4096) / 4096
  image = r * geometry.mobius(a / r, np.exp(1j * t))
  g_a = series.evaluate_many(g, np.array([a]))[0]
  gap = series.evaluate_many(g, image) - g_a
  direct = math.sqrt(np.mean(np.abs(gap) ** 2))
  assert norms.mobius_oscillation(g, r, [a])[0] \
    == pytest.approx(direct, rel=1e-10)


def test_bmoa_norm_stops_converged_points_early(monkeypatch):
  radii = []
  oscillation = norms.mobius_oscillation

  def counted(g, r, points, values=None):
    radii.append(r)
    return oscillation(g, r, points, values)

  monkeypatch.setattr(norms, 'mobius_oscillation', counted)
  g = realize(FunctionSpec.monomial(1), 64)
  result = norms.bmoa_norm_mobius(g, a_grid=[0], ladder=RadiusLadder(20))
  assert result.value == pytest.approx(1.0, abs=1e-12)
  # r_j = 1 - 2^-j is geometric: the extrapolated limit repeats at j = 5.
  assert len(radii) == 5


def test_bloch_norm_of_neg_log():
  g = realize(FunctionSpec.neg_log(), 4096)
  result = norms.bloch_norm(g, RadiusLadder(10))
  assert result.converged
  assert result.value == pytest.approx(2.0, rel=1e-3)


def test_lipschitz_seminorm_of_binomial_power():
  alpha = 0.5
  g = realize(FunctionSpec.binomial_power(alpha), 4096)
  result = norms.lipschitz_seminorm(g, alpha, RadiusLadder(10))
  assert result.converged
  assert result.value == pytest.approx(alpha * 2 ** (1 - alpha), abs=1e-3)


def test_carleson_seminorm_of_z():
  g = realize(FunctionSpec.monomial(1), 8)
  result = norms.carleson_seminorm(g, depth=6)
  # Attained by the whole disk: int (1 - |z|^2) dA.
  assert result.value == pytest.approx(0.5, rel=1e-12)
  assert result.converged
  assert result.kind == norms.CARLESON


def test_log_weighted_carleson_seminorm_of_z():
  g = realize(FunctionSpec.monomial(1), 8)
  result = norms.carleson_seminorm(g, depth=6, log_weight=True)
  # Attained at depth 1: log(2e)^2 (1 - 1/4)^2 / 2.
  expected = (1 + math.log(2)) ** 2 * 0.75 ** 2 / 2
  assert result.value == pytest.approx(expected, rel=1e-12)
  assert result.converged
  assert result.kind == norms.BMOA_LOG


@settings(deadline=None)
@given(polynomials())
def test_littlewood_paley_closed_form_matches_quadrature(f):
  closed = norms.lp_functional(f)
  assert norms.lp_functional_quadrature(f) == pytest.approx(
    closed, rel=1e-12, abs=1e-14)


def test_littlewood_paley_of_monomials():
  for n in (1, 4, 9):
    assert norms.lp_functional(TaylorSeries.monomial(n)) \
      == pytest.approx(n / (n + 1))


def test_a21_norm():
  assert norms.a21_norm(TaylorSeries.unit()) == pytest.approx(1.0)
  assert norms.a21_norm(TaylorSeries.monomial(1)) \
    == pytest.approx(math.sqrt(1 / 3))


def test_bergman_weighted_norm_of_one():
  value = norms.bergman_weighted_norm(
    TaylorSeries.unit(4), TaylorSeries.monomial(1, 4))
  assert value == pytest.approx(math.sqrt(0.5), rel=1e-12)


def test_optimal_domain_norm():
  g = realize(FunctionSpec.monomial(1), 64)
  f = realize(FunctionSpec.monomial(3), 64)
  result = norms.optimal_domain_norm(g, f)
  # T_z z^3 = z^4 / 4
  assert result.value == pytest.approx(0.25)
  assert result.kind == '[T_g,H2]'
  with pytest.raises(ConstantSymbol):
    norms.optimal_domain_norm(TaylorSeries.constant(2.0, 8), f)


@pytest.mark.parametrize('text, space, p, alpha', [
  ('H2', norms.HP, 2.0, None),
  ('H1.5', norms.HP, 1.5, None),
  ('Hinf', norms.HINF, None, None),
  ('BMOA', norms.BMOA, None, None),
  ('BMOAlog', norms.BMOA_LOG, None, None),
  ('K0.25', norms.KORENBLUM, None, 0.25),
  ('Lip1', norms.LIPSCHITZ, None, 1.0),
  ('Domain2', norms.OPTIMAL_DOMAIN, 2.0, None),
])
def test_space_parse(text, space, p, alpha):
  parsed = SpaceSpec.parse(text)
  assert (parsed.space, parsed.p, parsed.alpha) == (space, p, alpha)


@pytest.mark.parametrize('text', ['H0.5', 'K1', 'Lip0', 'L2', 'h2'])
def test_space_parse_rejects(text):
  with pytest.raises(InvalidSpec):
    SpaceSpec.parse(text)


def test_estimate_dispatch():
  f = TaylorSeries.monomial(1, 8)
  result = norms.estimate(SpaceSpec.parse('A21'), f)
  assert result.converged
  assert result.value == pytest.approx(math.sqrt(1 / 3))
  with pytest.raises(InvalidSpec):
    norms.estimate(SpaceSpec.parse('Bergman'), f)


def test_norm_estimate_serializes():
  estimate = NormEstimate(value=1.0, status=norms.CONVERGED, samples=(0.5, 1.0))
  d = json.loads(estimate.to_json())
  assert d['value'] == 1.0
  assert d['samples'] == [0.5, 1.0]
  assert set(d) == {'kind', 'value', 'status', 'samples', 'growth_fit',
                    'safe_radius', 'increment', 'extrapolated', 'notes'}
