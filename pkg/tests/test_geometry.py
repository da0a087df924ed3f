import numpy as np
import pytest
from hypothesis import given

from hvlab import geometry, series
from hvlab.errors import PoleHit, RadiusOutOfRange
from hvlab.geometry import CarlesonBox, PolarGrid, RadiusLadder
from hvlab.series import TailHint, TaylorSeries

from .strategies import disk_points


@given(disk_points(radius=0.9), disk_points())
def test_mobius_is_an_involution(a, z):
  back = geometry.mobius(a, geometry.mobius(a, z))
  assert abs(back - z) < 1e-12


def test_mobius_swaps_zero_and_a():
  assert geometry.mobius(0.5j, 0) == 0.5j
  assert abs(geometry.mobius(0.5j, 0.5j)) == 0


def test_mobius_errors():
  with pytest.raises(RadiusOutOfRange):
    geometry.mobius(1.0, 0.2)
  with pytest.raises(PoleHit):
    geometry.mobius(0.5, 2.0)


def test_polar_grid_has_unit_mass():
  assert PolarGrid.gauss().total_weight == pytest.approx(1.0, abs=1e-14)


def test_polar_grid_rejects_radii_outside_disk():
  with pytest.raises(RadiusOutOfRange):
    PolarGrid(np.array([0.5, 1.0]), np.array([0.5, 0.5]), 8)


def test_area_of_modulus_squared():
  value = geometry.area_integral(
    lambda r, theta: np.full(len(theta), r ** 2), PolarGrid.gauss())
  assert value == pytest.approx(0.5, rel=1e-14)


@pytest.mark.parametrize('n', [0, 1, 5, 20])
def test_bergman_norm_of_monomials(n):
  grid = PolarGrid.gauss(angles=series.circle_size(n))
  value = geometry.area_integral(
    geometry.series_integrand(TaylorSeries.monomial(n)), grid)
  assert value == pytest.approx(1 / (n + 1), rel=1e-12)


def test_doubled_area_integral_settles():
  f = TaylorSeries([1.0, 2.0, 3.0], TailHint.exact())
  value, angles, change = geometry.doubled_area_integral(
    geometry.series_integrand(f), PolarGrid.gauss(angles=8))
  # 1 + 4/2 + 9/3
  assert value == pytest.approx(6.0, rel=1e-12)
  assert change <= 1e-6 and angles >= 16


def test_dyadic_boxes():
  boxes = geometry.dyadic_boxes(2)
  assert len(boxes) == 7
  assert [b.depth for b in boxes] == [0, 1, 1, 2, 2, 2, 2]
  with pytest.raises(ValueError):
    geometry.dyadic_boxes(-1)


def test_box_contains():
  box = CarlesonBox(0.0, 0.5)
  assert box.contains(0.9 * np.exp(0.25j * np.pi))
  assert not box.contains(0.3)
  assert not box.contains(0.9 * np.exp(1.5j * np.pi))
  with pytest.raises(ValueError):
    CarlesonBox(0.0, 0.0)


def test_dyadic_integrals_of_the_weight_alone():
  integrals, r_max = geometry.dyadic_box_integrals(TaylorSeries.unit(), 2)
  assert r_max == 1.0
  # int_{9/16}^1 (1 - u) du
  assert integrals.sum() == pytest.approx(49 / 512, rel=1e-12)
  np.testing.assert_allclose(integrals, np.full(4, 49 / 2048), rtol=1e-12)


def test_single_box_agrees_with_dyadic_sweep():
  f = TaylorSeries([1.0, 0.5, 0.25j], TailHint.exact())
  integrals, _ = geometry.dyadic_box_integrals(f, 2)
  for k in range(4):
    value, _ = geometry.box_integral(f, CarlesonBox(k / 4, 0.25))
    assert value == pytest.approx(integrals[k], rel=1e-12)


def test_box_integral_below_cut_is_zero():
  value, r_max = geometry.box_integral(
    TaylorSeries.unit(), CarlesonBox(0.0, 0.25), r_max=0.5)
  assert value == 0.0 and r_max == 0.5


def test_box_safe_radius_of_truncated_series():
  k = np.arange(1, 65)
  f = TaylorSeries(np.concatenate([[0.0], 1 / k]),
                   TailHint.polynomial(1.0, -1.0))
  assert 0 < geometry.box_safe_radius(f) < 1


def test_radius_ladder():
  ladder = RadiusLadder(3)
  np.testing.assert_allclose(ladder.radii, [0.5, 0.75, 0.875])
  np.testing.assert_allclose(np.exp(ladder.abscissae), [2, 4, 8])
  with pytest.raises(ValueError):
    RadiusLadder(0)
