"""Norm and seminorm estimators.

Every estimator that involves a supremum over the disk returns a
`NormEstimate`: the samples it saw along a radius ladder (or a dyadic
depth sequence), a verdict, and a growth exponent. Suprema computed from
samples are lower bounds; the verdict is what experiments compare.

Verdict rules (see `classify`):
  diverging     the last three increments of samples**p are positive and
                increasing, and the fitted growth exponent exceeds
                `Config.GROWTH_FIT_MIN`.
  converged     the last increment is below tol * value, or the last
                increments contract by at least `Config.CONTRACTION_MAX`
                per step; the value is then extrapolated by the geometric
                remainder.
  inconclusive  anything else.

Ladder entries whose truncation error cannot be certified below
max(`Config.SAFE_TAIL_TOL`, tol * value) are reported as extrapolated
and left out of the verdict.
"""
import dataclasses
import json
import logging
import math
import re

import numpy as np
from scipy import optimize, signal

from . import series
from .config import Config
from .errors import (
  ConstantSymbol, InvalidSpec, NumericalValidityError, RadiusOutOfRange)
from .geometry import (
  PolarGrid, RadiusLadder, area_integral, box_safe_radius,
  dyadic_box_integrals, series_integrand)
from .operators import volterra
from .series import TaylorSeries


logger = logging.getLogger(__name__)


CONVERGED = 'converged'
DIVERGING = 'diverging'
INCONCLUSIVE = 'inconclusive'

# Spaces.
HP = 'Hp'
HINF = 'Hinf'
BMOA = 'BMOA'
BMOA_LOG = 'BMOAlog'
CARLESON = 'Carleson'
BLOCH = 'Bloch'
KORENBLUM = 'Korenblum'
LIPSCHITZ = 'Lipschitz'
BERGMAN_WEIGHTED = 'BergmanWeighted'
OPTIMAL_DOMAIN = 'OptimalDomain'
A21 = 'A21'
SPACES = (HP, HINF, BMOA, BMOA_LOG, CARLESON, BLOCH, KORENBLUM, LIPSCHITZ,
          BERGMAN_WEIGHTED, OPTIMAL_DOMAIN, A21)

# Samples used for the growth exponent fit.
GROWTH_FIT_SAMPLES = 4


@dataclasses.dataclass(frozen=True)
class NormEstimate:
  """A norm value together with how it was reached.

  Attributes:
    value (float): last sample, or the extrapolated limit when the
      samples contract.
    status (str): `converged`, `diverging` or `inconclusive`.
    samples (tuple): per-radius or per-depth values used for the verdict.
    abscissae (tuple): log(1 / (1 - r)) or log(1 / |I|) per sample.
    growth_fit (float): slope of log(sample) against the abscissae over
      the last samples, or None.
    safe_radius (float): largest radius whose sample is certified.
    increment (float): last Cauchy increment, or the geometric remainder
      when convergence came from contraction.
    kind (str): what was estimated.
    notes (tuple): truncation and refinement remarks.
    extrapolated (tuple): uncertified samples past the safe radius.
  """
  value: float
  status: str
  samples: tuple = ()
  abscissae: tuple = ()
  growth_fit: float = None
  safe_radius: float = None
  increment: float = None
  kind: str = ''
  notes: tuple = ()
  extrapolated: tuple = ()

  @property
  def converged(self):
    return self.status == CONVERGED

  @property
  def diverging(self):
    return self.status == DIVERGING

  def to_dict(self):
    return {
      'kind': self.kind,
      'value': self.value,
      'status': self.status,
      'samples': list(self.samples),
      'growth_fit': self.growth_fit,
      'safe_radius': self.safe_radius,
      'increment': self.increment,
      'extrapolated': list(self.extrapolated),
      'notes': list(self.notes),
    }

  def to_json(self):
    return json.dumps(self.to_dict(), sort_keys=True)


def growth_fit(samples, abscissae, count=GROWTH_FIT_SAMPLES):
  """Slope of log(samples) on abscissae over the last `count` samples."""
  s = np.asarray(samples, dtype=float)[-count:]
  x = np.asarray(abscissae, dtype=float)[-count:]
  keep = s > 0
  if keep.sum() < 2:
    return None
  return float(np.polyfit(x[keep], np.log(s[keep]), 1)[0])


def classify(samples, abscissae, power=1.0, tol=Config.CONVERGENCE_TOL,
             growth_min=Config.GROWTH_FIT_MIN,
             contraction=Config.CONTRACTION_MAX):
  """Apply the verdict rules to a sample sequence.

  Returns:
    tuple: (status, value, increment, growth exponent).
  """
  s = np.asarray(samples, dtype=float)
  if len(s) < 2:
    value = float(s[-1]) if len(s) else math.nan
    return INCONCLUSIVE, value, math.inf, None

  value = float(s[-1])
  growth = growth_fit(s, abscissae)

  powered = np.diff(s ** power)
  if len(powered) >= 3:
    a, b, c = powered[-3:]
    if 0 < a < b < c and growth is not None and growth > growth_min:
      return DIVERGING, value, float(np.diff(s)[-1]), growth

  steps = np.diff(s)
  last = abs(float(steps[-1]))
  if last <= tol * max(abs(value), 1e-300):
    return CONVERGED, value, last, growth

  if len(steps) >= 3:
    recent = steps[-3:]
    same_sign = np.all(recent > 0) or np.all(recent < 0)
    if same_sign:
      ratios = np.abs(recent[1:] / recent[:-1])
      q = float(ratios.max())
      if q <= contraction:
        remainder = abs(float(recent[-1])) * q / (1 - q)
        limit = value + math.copysign(remainder, recent[-1])
        return CONVERGED, limit, remainder, growth

  return INCONCLUSIVE, value, last, growth


def sequence_estimate(samples, abscissae, safe_count=None, power=1.0,
                      kind='', notes=(), safe_radius=None,
                      tol=Config.CONVERGENCE_TOL):
  """NormEstimate for a sample sequence; only the first `safe_count`
  samples (default: all) enter the verdict."""
  if safe_count is None:
    safe_count = len(samples)
  samples = [float(s) for s in samples]
  used, beyond = samples[:safe_count], samples[safe_count:]
  notes = list(notes)
  if beyond:
    notes.append(f'{len(beyond)} sample(s) past the safe radius excluded')
  status, value, increment, growth = classify(
    used, abscissae[:safe_count], power=power, tol=tol)
  return NormEstimate(
    value=value, status=status, samples=tuple(used),
    abscissae=tuple(float(x) for x in abscissae[:safe_count]),
    growth_fit=growth, safe_radius=safe_radius, increment=increment,
    kind=kind, notes=tuple(notes), extrapolated=tuple(beyond))


def _check_radius(r):
  if not 0 <= r < 1:
    raise(RadiusOutOfRange(f'radius must lie in [0, 1), got {r}'))


def _check_p(p):
  if p < 1:
    raise(InvalidSpec(f'p must be >= 1, got {p}'))


def _safe_count(ok):
  """Length of the leading run of certified samples."""
  count = 0
  for flag in ok:
    if not flag:
      break
    count += 1
  return count


# --- Hardy means ---

def mean_p(f, r, p, tol=1e-10, max_angles=Config.MAX_ANGLES):
  """M_p(r, f) by the periodic trapezoid rule on FFT circle samples.

  The angular count starts at `series.circle_size(f.order)` and doubles
  until two successive values differ by less than `tol` (relative).
  """
  _check_radius(r)
  _check_p(p)
  count = series.circle_size(f.order)
  value = _circle_mean(f, r, p, count)
  while count * 2 <= max_angles:
    count *= 2
    refined = _circle_mean(f, r, p, count)
    change = abs(refined - value)
    value = refined
    if change <= tol * max(value, 1e-300):
      break
  else:
    logger.warning('mean_p(r=%g, p=%g) did not settle by %d angles',
                   r, p, count)
  return value


def certified_mean(f, r, p, tol=Config.SAFE_TAIL_TOL):
  """M_p(r, f), refusing radii whose truncation error exceeds `tol`.

  Raises:
    NumericalValidityError: r lies above `series.safe_radius(f, tol)`.
  """
  _check_radius(r)
  safe = series.safe_radius(f, tol)
  if r > safe:
    raise(NumericalValidityError(
      f'radius {r} lies above the safe radius {safe:.12g} of the truncation'
    ))
  return mean_p(f, r, p)


def _circle_mean(f, r, p, count):
  values = np.abs(series.evaluate_on_circle(f, r, count))
  return float(np.mean(values ** p) ** (1 / p))


def _parseval_mean(f, r):
  return math.sqrt(series.majorant(f, r, power=2))


def _hardy_error(f, r, p, value):
  """Bound on |M_p(r, f) - M_p(r, f_N)| from the tail hint."""
  if p == 2:
    tail = series.tail_error(f, r, power=2)
    return tail / (2 * value) if value > 0 else math.sqrt(tail)
  return series.tail_error(f, r)


def hardy_norm(f, p=2, ladder=None, tol=Config.CONVERGENCE_TOL):
  """sup over r of M_p(r, f) along the radius ladder.

  p = 2 uses the Parseval form sum |a_k|^2 r^{2k}.
  """
  _check_p(p)
  ladder = ladder or RadiusLadder()
  radii = ladder.radii
  samples, ok = [], []
  for r in radii:
    value = _parseval_mean(f, r) if p == 2 else mean_p(f, r, p)
    samples.append(value)
    ok.append(_hardy_error(f, r, p, value) <=
              max(Config.SAFE_TAIL_TOL, tol * value))

  notes = []
  drops = np.diff(samples) < -1e-12 * max(max(samples), 1e-300)
  if np.any(drops):
    logger.warning('M_%g(r, f) decreased along the ladder', p)
    notes.append('non-monotone samples')

  count = _safe_count(ok)
  safe = float(radii[count - 1]) if count else 0.0
  if not count:
    notes.append('no ladder radius is certified')
  result = sequence_estimate(samples, ladder.abscissae, count, power=p,
                             kind=f'H{p:g}', notes=notes, safe_radius=safe,
                             tol=tol)
  hint = f.tail_hint
  if p == 2 and hint.kind == series.EXACT and not hint.heuristic:
    # Polynomial: M_2(r, f) increases to the coefficient norm.
    result = dataclasses.replace(
      result, value=h2_norm_exact(f), status=CONVERGED, increment=0.0,
      notes=result.notes + ('polynomial: value is the coefficient norm',))
  return result


def h2_norm_exact(f):
  """sqrt(sum |a_k|^2): exact on the truncation, a lower bound for f."""
  return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


# --- Growth spaces ---

def growth_sup(f, beta, on_derivative=False, ladder=None,
               tol=Config.CONVERGENCE_TOL):
  """sup over the disk of (1 - |z|^2)^beta |h(z)|, h = f or f'.

    Bloch            growth_sup(f, 1, True)
    Korenblum K_a    growth_sup(f, a, False)
    Lipschitz L_a    growth_sup(f, 1 - a, True)
    H-infinity       growth_sup(f, 0, False)

  Per radius the maximum over FFT circle samples is refined by a bounded
  scalar search around the best sample. The verdict uses the running
  maximum over r = 0 and the ladder radii.
  """
  if beta < 0:
    raise(ValueError(f'beta must be >= 0, got {beta}'))
  ladder = ladder or RadiusLadder()
  h = series.differentiate(f) if on_derivative else f
  radii = np.concatenate([[0.0], ladder.radii])
  abscissae = np.concatenate([[0.0], ladder.abscissae])
  count = series.circle_size(h.order)
  step = 2 * np.pi / count

  per_radius, ok = [], []
  for r in radii:
    weight = (1 - r ** 2) ** beta
    values = np.abs(series.evaluate_on_circle(h, r, count)) * weight
    best_index = int(np.argmax(values))
    best = float(values[best_index])
    if r > 0:
      theta = best_index * step
      refined = optimize.minimize_scalar(
        lambda t: -weight * abs(
          series.evaluate_many(h, np.array([r * np.exp(1j * t)]))[0]),
        bounds=(theta - step, theta + step), method='bounded')
      best = max(best, -float(refined.fun))
    per_radius.append(best)
    error = series.tail_error(h, r) * weight
    ok.append(error <= max(Config.SAFE_TAIL_TOL, tol * best))

  running = np.maximum.accumulate(per_radius)
  count_ok = _safe_count(ok)
  safe = float(radii[count_ok - 1]) if count_ok else 0.0
  kind = f'growth(beta={beta:g}{", derivative" if on_derivative else ""})'
  return sequence_estimate(running, abscissae, count_ok, kind=kind,
                           safe_radius=safe, tol=tol)


def bloch_norm(f, ladder=None):
  return growth_sup(f, 1.0, True, ladder)


def korenblum_norm(f, alpha, ladder=None):
  if not 0 <= alpha < 1:
    raise(InvalidSpec(f'Korenblum alpha must lie in [0, 1), got {alpha}'))
  return growth_sup(f, alpha, False, ladder)


def lipschitz_seminorm(f, alpha, ladder=None):
  if not 0 < alpha <= 1:
    raise(InvalidSpec(f'Lipschitz alpha must lie in (0, 1], got {alpha}'))
  return growth_sup(f, 1 - alpha, True, ladder)


def hinf_norm(f, ladder=None):
  return growth_sup(f, 0.0, False, ladder)


# --- BMOA ---

def _circle_energy(g, r):
  """Fourier coefficients k >= 0 of |g(r e^{it}) - g(0)|^2."""
  c = g.coeffs * r ** np.arange(g.order + 1)
  c[0] = 0
  return signal.fftconvolve(c, np.conj(c[::-1]))[g.order:]


def mobius_oscillation(g, r, points, values=None):
  """||g_r o phi_b - g_r(b)||_2 at b = a / r for each point a, |a| < r.

  Here g_r(z) = g(r z). The square equals P_r[|g - g(0)|^2](a) -
  |g(a) - g(0)|^2, with P_r the Poisson integral over the circle of
  radius r, evaluated as a power series in a / r whose coefficients are
  the autocorrelation of the dilated Taylor coefficients.

  Args:
    g (TaylorSeries): symbol.
    r (float): circle radius in (0, 1].
    points (ndarray): points with |a| < r.
    values (ndarray): g at `points`, when already known.
  """
  points = np.asarray(points, dtype=complex)
  if np.any(np.abs(points) >= r):
    raise(RadiusOutOfRange(f'Mobius parameters need |a| < r = {r}'))
  if values is None:
    values = series.evaluate_many(g, points)
  energy = TaylorSeries(_circle_energy(g, r))
  poisson = 2 * np.real(series.evaluate_many(energy, points / r)) \
    - energy.coeffs[0].real
  shifted = np.abs(np.asarray(values) - g.coeffs[0]) ** 2
  return np.sqrt(np.maximum(poisson - shifted, 0.0))


def bmoa_norm_mobius(g, a_grid=None, ladder=None, angles=64,
                     tol=Config.CONVERGENCE_TOL):
  """|g(0)| + sup over a of ||g o phi_a - g(a)||_2.

  Args:
    g (TaylorSeries): symbol.
    a_grid (ndarray): points of the open disk. Default: 0 and
      `angles` points on every ladder radius below the safe radius.
    ladder (RadiusLadder): radii for the default grid and for the
      inner limit over circles of radius r -> 1.
    angles (int): points per radius in the default grid.

  The inner limit only uses circles inside the safe radius of g, and a
  point leaves the ladder once two successive extrapolated limits agree
  within `tol`. The outer sup is over grid points, a lower bound.
  """
  ladder = ladder or RadiusLadder()
  safe = series.safe_radius(g)
  notes = [f'evaluation safe radius {safe:.6g}']

  if a_grid is None:
    groups = [(0.0, np.array([0j]))]
    theta = 2 * np.pi * np.arange(angles) / angles
    for r in ladder.radii:
      if r < safe:
        groups.append((float(r), r * np.exp(1j * theta)))
  else:
    a_grid = np.asarray(a_grid, dtype=complex)
    radii = np.abs(a_grid)
    groups = [(float(r), a_grid[radii == r]) for r in np.unique(radii)]

  points = np.concatenate([p for _, p in groups])
  owner = np.concatenate([np.full(len(p), i) for i, (_, p) in
                          enumerate(groups)])
  inside = np.abs(points) < safe
  values = np.zeros(len(points), dtype=complex)
  values[inside] = series.evaluate_many(g, points[inside])

  active = inside.copy()
  limits = np.zeros(len(points))
  samples = [[] for _ in points]
  abscissae = [[] for _ in points]
  for r in ladder.radii:
    if r >= safe:
      break
    index = np.flatnonzero(active & (np.abs(points) < r))
    if not len(index):
      continue
    oscillation = mobius_oscillation(g, r, points[index], values[index])
    x = -math.log1p(-r)
    for i, v in zip(index, oscillation):
      samples[i].append(float(v))
      abscissae[i].append(x)
      status, limit, _, _ = classify(samples[i], abscissae[i], power=2,
                                     tol=tol)
      limit = max(limit, float(v))
      if status == CONVERGED and abs(limit - limits[i]) <= tol * limit:
        active[i] = False
      limits[i] = limit

  g0 = abs(g.coeffs[0])
  per_radius = []
  for i, (r, _) in enumerate(groups):
    mine = limits[owner == i]
    sup = float(mine.max()) if len(mine) else 0.0
    per_radius.append(g0 + sup)
    logger.debug('BMOA sup over |a| <= %.6g: %.12g', r, g0 + sup)

  running = np.maximum.accumulate(per_radius)
  abscissae = [-math.log1p(-r) for r, _ in groups]
  notes.append('sup over a finite grid (lower bound)')
  return sequence_estimate(running, abscissae, len(running), kind='BMOA',
                           notes=notes, safe_radius=safe, tol=tol)


def carleson_seminorm(g, depth=Config.DYADIC_DEPTH, log_weight=False,
                      points=Config.BOX_GAUSS_POINTS, r_max=None):
  """sup over dyadic boxes of w(|I|)/|I| * int_S(I) |g'|^2 (1 - |z|^2) dA.

  w = log(e/|I|)^2 when `log_weight` (the BMOA_log condition), else 1.
  `samples` holds the per-depth maxima; the verdict is on their running
  maximum, so boundedness in depth is what it reports.
  """
  density = series.differentiate(g)
  if r_max is None:
    r_max = box_safe_radius(density)

  notes = [f'radial cut r_max = {r_max:.12g}']
  maxima, argmax = [], []
  for level in range(depth + 1):
    length = 2.0 ** -level
    integrals, _ = dyadic_box_integrals(density, level, points, r_max)
    weight = math.log(math.e / length) ** 2 if log_weight else 1.0
    normalized = weight * integrals / length
    best = int(np.argmax(normalized))
    maxima.append(float(normalized[best]))
    argmax.append(best)
    if r_max <= 1 - length:
      notes.append(f'depth {level} lies past r_max')
    logger.debug('Carleson depth %d: max %.12g at box %d',
                 level, maxima[-1], best)

  notes.append('maximizing boxes by depth: ' + ','.join(map(str, argmax)))
  abscissae = np.arange(depth + 1) * math.log(2)
  status, value, increment, growth = classify(
    np.maximum.accumulate(maxima), abscissae)
  return NormEstimate(
    value=value, status=status, samples=tuple(maxima),
    abscissae=tuple(abscissae), growth_fit=growth, safe_radius=r_max,
    increment=increment, kind=BMOA_LOG if log_weight else CARLESON,
    notes=tuple(notes))


# --- Littlewood-Paley and Bergman ---

def lp_functional(f):
  """|a_0|^2 + sum_{k>=1} |a_k|^2 k/(k+1), the closed form of
  |f(0)|^2 + int_D |f'|^2 (1 - |z|^2) dA."""
  k = np.arange(f.order + 1)
  return float(np.sum(np.abs(f.coeffs) ** 2 * np.where(k > 0, k / (k + 1), 1)))


def lp_functional_quadrature(f, points=None):
  """Same functional by area quadrature of |f'|^2 (1 - |z|^2)."""
  derivative = series.differentiate(f)
  points = points or max(Config.GAUSS_POINTS, derivative.order // 2 + 2)
  grid = PolarGrid.gauss(points, series.circle_size(derivative.order))
  integral = area_integral(
    series_integrand(derivative, weight=lambda r: 1 - r ** 2), grid)
  return abs(f.coeffs[0]) ** 2 + integral


def bergman_weighted_norm(f, g, points=None):
  """sqrt(int_D |f|^2 |g'|^2 (1 - |z|^2) dA).

  The product f g' is kept only through the degree both truncations
  determine.
  """
  derivative = series.differentiate(g)
  valid = min(f.order, derivative.order)
  product = series.cauchy_product(f, derivative, valid)
  points = points or max(Config.GAUSS_POINTS, product.order // 2 + 2)
  grid = PolarGrid.gauss(points, series.circle_size(product.order))
  integral = area_integral(
    series_integrand(product, weight=lambda r: 1 - r ** 2), grid)
  return math.sqrt(max(integral, 0.0))


def a21_weights(order):
  k = np.arange(order + 1)
  return 2 / ((k + 1) * (k + 2))


def a21_inner(f, h):
  """<f, h> in A^2_1: sum a_k conj(b_k) 2/((k+1)(k+2))."""
  n = min(f.order, h.order)
  return complex(np.sum(
    f.coeffs[:n + 1] * np.conj(h.coeffs[:n + 1]) * a21_weights(n)))


def a21_norm(f):
  return math.sqrt(max(a21_inner(f, f).real, 0.0))


def optimal_domain_norm(g, f, p=2, ladder=None, tol=Config.CONVERGENCE_TOL):
  """||T_g f||_p, the norm of f in [T_g, H^p]."""
  if g.is_constant():
    raise(ConstantSymbol('the optimal domain needs a nonconstant symbol'))
  image = volterra(g, f)
  valid = min(f.order, g.order - 1) + 1
  estimate = hardy_norm(image.truncate(valid), p, ladder, tol)
  return dataclasses.replace(estimate, kind=f'[T_g,H{p:g}]')


# --- Space dispatch ---

@dataclasses.dataclass(frozen=True)
class SpaceSpec:
  """A space to measure a function in.

  `p` applies to Hp and OptimalDomain, `alpha` to Korenblum and
  Lipschitz, `g` (a TaylorSeries) to BergmanWeighted and OptimalDomain.
  """
  space: str
  p: float = None
  alpha: float = None
  g: TaylorSeries = None

  def __post_init__(self):
    if self.space not in SPACES:
      raise(InvalidSpec(f'unknown space `{self.space}`; expected one of {SPACES}'))
    if self.space in (HP, OPTIMAL_DOMAIN):
      if self.p is None or self.p < 1:
        raise(InvalidSpec(f'{self.space} needs p >= 1, got {self.p}'))
    if self.space == LIPSCHITZ and not (
        self.alpha is not None and 0 < self.alpha <= 1):
      raise(InvalidSpec(f'Lipschitz needs 0 < alpha <= 1, got {self.alpha}'))
    if self.space == KORENBLUM and not (
        self.alpha is not None and 0 <= self.alpha < 1):
      raise(InvalidSpec(f'Korenblum needs 0 <= alpha < 1, got {self.alpha}'))

  _PATTERNS = (
    (r'H(?P<p>\d+(\.\d+)?)', HP),
    (r'Hinf', HINF),
    (r'BMOAlog', BMOA_LOG),
    (r'BMOA', BMOA),
    (r'Carleson', CARLESON),
    (r'Bloch', BLOCH),
    (r'K(?P<alpha>\d*\.?\d+)', KORENBLUM),
    (r'Lip(?P<alpha>\d*\.?\d+)', LIPSCHITZ),
    (r'A21', A21),
    (r'Bergman', BERGMAN_WEIGHTED),
    (r'Domain(?P<p>\d+(\.\d+)?)', OPTIMAL_DOMAIN),
  )

  @classmethod
  def parse(cls, text, g=None):
    """Parse names like `H2`, `Hinf`, `BMOAlog`, `K0.5`, `Lip0.5`,
    `Bergman` or `Domain2`."""
    for pattern, space in cls._PATTERNS:
      match = re.fullmatch(pattern, text.strip())
      if match:
        groups = match.groupdict()
        p = float(groups['p']) if groups.get('p') else None
        alpha = float(groups['alpha']) if groups.get('alpha') else None
        return cls(space, p=p, alpha=alpha, g=g)
    raise(InvalidSpec(f'cannot parse space `{text}`'))


def estimate(space, f, ladder=None, depth=Config.DYADIC_DEPTH):
  """Measure `f` in `space` (a SpaceSpec) and return a NormEstimate."""
  if space.space == HP:
    return hardy_norm(f, space.p, ladder)
  if space.space == HINF:
    return hinf_norm(f, ladder)
  if space.space == BMOA:
    return bmoa_norm_mobius(f, ladder=ladder)
  if space.space == BMOA_LOG:
    return carleson_seminorm(f, depth, log_weight=True)
  if space.space == CARLESON:
    return carleson_seminorm(f, depth, log_weight=False)
  if space.space == BLOCH:
    return bloch_norm(f, ladder)
  if space.space == KORENBLUM:
    return korenblum_norm(f, space.alpha, ladder)
  if space.space == LIPSCHITZ:
    return lipschitz_seminorm(f, space.alpha, ladder)

  if space.space in (BERGMAN_WEIGHTED, OPTIMAL_DOMAIN) and space.g is None:
    raise(InvalidSpec(f'{space.space} needs a symbol g'))
  if space.space == OPTIMAL_DOMAIN:
    return optimal_domain_norm(space.g, f, space.p, ladder)

  if space.space == A21:
    value = a21_norm(f)
  else:
    value = bergman_weighted_norm(f, space.g)
  return NormEstimate(value=value, status=CONVERGED, samples=(value,),
                      kind=space.space, notes=('closed form on the truncation',))
