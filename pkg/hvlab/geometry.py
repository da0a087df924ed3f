"""Disk geometry: Mobius maps, polar quadrature and Carleson boxes.

Area integrals use the normalized area measure dA (total mass 1). In the
variable u = r**2 it factors as du times the angular average, so

  int_D F dA = int_0^1 du (1/2pi) int_0^2pi F(sqrt(u) e^{it}) dt.

The radial integral uses Gauss-Legendre nodes in u, the angular one the
periodic trapezoid rule (or a plain trapezoid on a sub-arc).
"""
import dataclasses
import logging
import math

import numpy as np
from scipy import special

from . import series
from .config import Config
from .errors import PoleHit, RadiusOutOfRange


logger = logging.getLogger(__name__)


def mobius(a, z):
  """phi_a(z) = (a - z) / (1 - conj(a) z). Works elementwise on arrays."""
  if abs(a) >= 1:
    raise(RadiusOutOfRange(f'Mobius parameter needs |a| < 1, got {abs(a)}'))
  z = np.asarray(z, dtype=complex)
  denominator = 1 - np.conj(a) * z
  if np.any(denominator == 0):
    raise(PoleHit(f'1 - conj(a) z vanishes for a = {a}'))
  out = (a - z) / denominator
  return out if out.ndim else complex(out)


@dataclasses.dataclass(frozen=True)
class PolarGrid:
  """Tensor rule for the normalized area measure.

  Attributes:
    radii (ndarray): radial nodes r_i = sqrt(u_i).
    weights (ndarray): Gauss-Legendre weights in u; they sum to the
      measure of the annulus covered (1 for the whole disk).
    angular_count (int): number of equispaced angles per radius.
  """
  radii: np.ndarray
  weights: np.ndarray
  angular_count: int

  def __post_init__(self):
    if np.any(self.radii >= 1) or np.any(self.radii < 0):
      raise(RadiusOutOfRange('polar grid radii must lie in [0, 1)'))
    if self.angular_count < 1:
      raise(ValueError(f'angular_count must be >= 1, got {self.angular_count}'))

  @classmethod
  def gauss(cls, points=Config.GAUSS_POINTS, angles=Config.MIN_ANGLES,
            r_min=0.0, r_max=1.0):
    """Gauss-Legendre in u = r**2 over r_min < r < r_max."""
    u_lo, u_hi = r_min ** 2, r_max ** 2
    x, w = special.roots_legendre(points)
    u = 0.5 * (u_hi - u_lo) * x + 0.5 * (u_hi + u_lo)
    return cls(np.sqrt(u), 0.5 * (u_hi - u_lo) * w, angles)

  def with_angles(self, angles):
    return dataclasses.replace(self, angular_count=angles)

  @property
  def angles(self):
    return 2 * np.pi * np.arange(self.angular_count) / self.angular_count

  @property
  def total_weight(self):
    return float(self.weights.sum())


def area_integral(provider, grid):
  """Tensor quadrature of a real integrand over the grid's annulus.

  Args:
    provider (callable): `provider(r, theta)` returns real samples at
      radius `r` (float) and angles `theta` (ndarray).
    grid (PolarGrid): quadrature description.
  """
  theta = grid.angles
  means = np.array([np.mean(provider(r, theta)) for r in grid.radii])
  return float(np.dot(grid.weights, means))


def series_integrand(f, weight=None, power=2):
  """Provider for |f|**power * weight(r), evaluated by FFT per radius.

  The grid's angular count must be a power of two at least
  `series.circle_size(f.order)`.
  """
  def provider(r, theta):
    values = np.abs(series.evaluate_on_circle(f, r, len(theta))) ** power
    if weight is not None:
      values = values * weight(r)
    return values
  return provider


def doubled_area_integral(provider, grid, tol=Config.CONVERGENCE_TOL,
                          max_angles=Config.MAX_ANGLES):
  """Area integral with the angular count doubled until it settles.

  Returns:
    tuple: (value, angular count used, last relative change).
  """
  value = area_integral(provider, grid)
  while grid.angular_count * 2 <= max_angles:
    grid = grid.with_angles(grid.angular_count * 2)
    refined = area_integral(provider, grid)
    change = abs(refined - value) / max(abs(refined), 1e-300)
    value = refined
    if change <= tol:
      return value, grid.angular_count, change
  logger.warning('Angular doubling stopped at %d angles before settling',
                 grid.angular_count)
  return value, grid.angular_count, change


@dataclasses.dataclass(frozen=True)
class CarlesonBox:
  """Arc I of the circle and its box S(I).

  `start` and `length` are in units of full turns, so the arc covers
  angles 2pi * [start, start + length) and the box is
  {z : z/|z| in I, 1 - length < |z| < 1}.
  """
  start: float
  length: float

  def __post_init__(self):
    if not 0 < self.length <= 1:
      raise(ValueError(f'box length must lie in (0, 1], got {self.length}'))

  @property
  def center_angle(self):
    return 2 * np.pi * (self.start + 0.5 * self.length)

  @property
  def inner_radius(self):
    return 1 - self.length

  @property
  def depth(self):
    """Dyadic depth l when length == 2**-l."""
    return -math.log2(self.length)

  def contains(self, z):
    z = np.asarray(z, dtype=complex)
    radius = np.abs(z)
    turns = np.mod(np.angle(z) / (2 * np.pi) - self.start, 1.0)
    return (radius > self.inner_radius) & (radius < 1) & (turns < self.length)


def dyadic_boxes(max_depth):
  """Boxes over the arcs [k 2^-l, (k+1) 2^-l), l = 0..max_depth."""
  if max_depth < 0:
    raise(ValueError(f'max_depth must be >= 0, got {max_depth}'))
  return [
    CarlesonBox(k / 2 ** level, 1 / 2 ** level)
    for level in range(max_depth + 1)
    for k in range(2 ** level)
  ]


def _arc_trapezoid(samples, panels):
  """Trapezoid sum over consecutive blocks of `panels` panels.

  `samples` covers the whole circle, so each block's closing sample is
  the next block's opening one.
  """
  blocks = samples.reshape(-1, panels)
  closing = np.roll(blocks[:, 0], -1)
  return blocks.sum(axis=1) - 0.5 * blocks[:, 0] + 0.5 * closing


def _radial_rule(inner, outer, points):
  x, w = special.roots_legendre(points)
  u_lo, u_hi = inner ** 2, outer ** 2
  u = 0.5 * (u_hi - u_lo) * x + 0.5 * (u_hi + u_lo)
  return np.sqrt(u), 0.5 * (u_hi - u_lo) * w


def _density_on_circle(density, multiplier, r, count, phase=0.0):
  values = np.abs(series.evaluate_on_circle(density, r, count, phase)) ** 2
  if multiplier is not None:
    values *= np.abs(
      series.evaluate_on_circle(multiplier, r, count, phase)) ** 2
  return values * (1 - r ** 2)


def box_integral(density, box, points=Config.BOX_GAUSS_POINTS, r_max=None,
                 multiplier=None):
  """int over S(I) of |density|^2 |multiplier|^2 (1 - |z|^2) dA.

  Radially the box is cut at `r_max` (default: the density's safe
  radius, see `series.safe_radius`).

  Returns:
    tuple: (value, r_max used).
  """
  if r_max is None:
    r_max = box_safe_radius(density, multiplier)
  if r_max <= box.inner_radius:
    return 0.0, r_max

  order = density.order + (0 if multiplier is None else multiplier.order)
  count = max(series.circle_size(order), _arc_count(box.length))
  panels_exact = box.length * count
  panels = int(math.floor(panels_exact))
  frac = panels_exact - panels
  h = 2 * np.pi / count

  radii, weights = _radial_rule(box.inner_radius, r_max, points)
  phase = 2 * np.pi * box.start
  arc = np.empty(len(radii))
  for i, r in enumerate(radii):
    values = _density_on_circle(density, multiplier, r, count, phase)
    values = np.append(values, values[0])
    total = values[:panels + 1].sum() - 0.5 * (values[0] + values[panels])
    if frac > 0:
      # Partial last panel, linear between the two straddling samples.
      right = values[panels + 1]
      end = values[panels] + frac * (right - values[panels])
      total += 0.5 * frac * (values[panels] + end)
    arc[i] = total * h / (2 * np.pi)
  return float(np.dot(weights, arc)), r_max


def _arc_count(length, per_arc=64):
  need = int(math.ceil(per_arc / length))
  return 1 << (need - 1).bit_length()


def dyadic_box_integrals(density, level, points=Config.BOX_GAUSS_POINTS,
                         r_max=None, multiplier=None):
  """`box_integral` for all 2**level boxes at one dyadic depth.

  One FFT per radial node serves every box, since the boxes partition the
  circle.

  Returns:
    tuple: (ndarray of 2**level integrals ordered by arc start, r_max).
  """
  if r_max is None:
    r_max = box_safe_radius(density, multiplier)
  length = 1 / 2 ** level
  if r_max <= 1 - length:
    return np.zeros(2 ** level), r_max

  order = density.order + (0 if multiplier is None else multiplier.order)
  count = max(series.circle_size(order), _arc_count(length))
  panels = count >> level
  h = 2 * np.pi / count

  radii, weights = _radial_rule(1 - length, r_max, points)
  integrals = np.zeros(2 ** level)
  for r, w in zip(radii, weights):
    values = _density_on_circle(density, multiplier, r, count)
    integrals += w * _arc_trapezoid(values, panels) * h / (2 * np.pi)
  return integrals, r_max


def box_safe_radius(density, multiplier=None, tol=Config.CONVERGENCE_TOL):
  """Radius past which the density's truncation error is not certified."""
  r_max = series.safe_radius(density, tol, relative=True)
  if multiplier is not None:
    r_max = min(r_max, series.safe_radius(multiplier, tol, relative=True))
  if r_max < 1:
    logger.debug('Box integrals cut at r_max = %.12f', r_max)
  return r_max


@dataclasses.dataclass(frozen=True)
class RadiusLadder:
  """Radii r_j = 1 - 2**-j, j = 1..depth, approximating sup over r < 1."""
  depth: int = Config.LADDER_DEPTH
  tol: float = Config.CONVERGENCE_TOL

  def __post_init__(self):
    if self.depth < 1:
      raise(ValueError(f'ladder depth must be >= 1, got {self.depth}'))

  @property
  def radii(self):
    return 1 - 2.0 ** -np.arange(1, self.depth + 1)

  @property
  def abscissae(self):
    """log(1 / (1 - r_j)), the variable growth exponents are fitted in."""
    return np.arange(1, self.depth + 1) * math.log(2)
