"""Registered experiments.

Each experiment realizes its functions once, computes NormEstimates and
tables, and records pass/fail against registered expectations. None of
them compare floats for equality; every rule is an inequality with a
tolerance or an equality of verdicts.
"""
import logging
import math

import numpy as np
from scipy import linalg, special

from .. import catalog, labels, norms, operators, series, util
from ..catalog import FunctionSpec, realize
from ..config import Config, RunConfig
from ..errors import IllConditioned
from ..geometry import PolarGrid, RadiusLadder
from ..norms import CONVERGED, DIVERGING
from ..series import TaylorSeries
from .report import ExperimentReport, register


logger = logging.getLogger(__name__)


# Experiment ids, as accepted on the command line.
MONOMIAL_DECAY = 'monomial-decay'
WITNESS = 'witness'
INTERSECTION = 'intersection'
MULTIPLIER = 'multiplier'
CYCLICITY = 'cyclicity'
ALEMAN_CIMA = 'aleman-cima'
BLASCHKE_CASE = 'blaschke-case'
KORENBLUM_MULTIPLIER = 'korenblum-multiplier'
GROWTH_PAIR = 'growth-pair'
POINT_EVALUATION = 'point-evaluation'
CONFORMAL_INVARIANCE = 'conformal-invariance'
COMPANION_RATIO = 'companion-ratio'
POLYNOMIAL_DENSITY = 'polynomial-density'

# Order per largest monomial degree in the decay and intersection tables.
ORDER_PER_DEGREE = 64

# Slope of log ||T_g z^n||_2 against log n for g = -log(1 - z).
DECAY_SLOPE = -0.5
DECAY_SLOPE_TOL = 0.05


def _config(config):
  return config if config is not None else RunConfig()


def run_ladder(config):
  return RadiusLadder(config.ladder, config.conv_tol)


def grid_angles(config, default):
  """Points per radius for sampled grids: the run's `angles` unless auto."""
  return default if config.angles == 'auto' else config.angles


def as_spec(x):
  if isinstance(x, FunctionSpec):
    return x
  if isinstance(x, str):
    return catalog.CATALOG.get(x) or FunctionSpec.parse(x)
  raise(TypeError(f'expected FunctionSpec or str, not {type(x).__name__}'))


def _report(name, config, **parameters):
  params = {
    k: (v.to_dict() if isinstance(v, FunctionSpec) else v)
    for k, v in parameters.items()
  }
  logger.info('%s: start %s', name, params)
  return ExperimentReport(
    name, parameters=params, seed=config.seed, config=config.to_dict())


# --- Monomial decay ---

register('monomial_decay.nonincreasing',
         '||T_g(z^n)||_p is nonincreasing along n_list, up to tol * value')
register('monomial_decay.closed_form',
         'for g = -log(1-z), p = 2: |norm^2 - sum_{m=n}^{n+N-1} 1/(m+1)^2| '
         '<= identity_tol for every n')
register('monomial_decay.slope',
         'for g = -log(1-z), p = 2: slope of log norm on log n over n >= 16 '
         'is -1/2 +- 0.05')


def monomial_decay(g, p=2, n_list=(1, 16, 32, 64, 128, 256, 512, 1024),
                   config=None):
  """Table of ||T_g(z^n)||_p.

  p = 2 uses the exact coefficient norm of the truncation; other p go
  through `hardy_norm`. The order is raised to 64 * max(n) so the
  truncation gap stays small against the closed form.
  """
  config = _config(config)
  g_spec = as_spec(g)
  n_list = sorted(set(int(n) for n in n_list))
  if n_list[0] < 0:
    raise(ValueError(f'n must be >= 0, got {n_list[0]}'))
  order = max(config.order, ORDER_PER_DEGREE * max(n_list[-1], 1))
  report = _report(MONOMIAL_DECAY, config, g=g_spec, p=p, n_list=n_list,
                   order=order)
  symbol = realize(g_spec, order)
  is_neg_log = g_spec.kind == catalog.NEG_LOG

  rows = []
  for n in n_list:
    image = operators.volterra(symbol, TaylorSeries.monomial(n))
    if p == 2:
      norm = norms.h2_norm_exact(image)
    else:
      estimate = norms.hardy_norm(image, p, run_ladder(config), config.conv_tol)
      norm = estimate.value
      report.add_verdict(f'n={n}', estimate)
    closed = float(special.polygamma(1, n + 1)) if is_neg_log else math.nan
    rows.append({
      labels.N: n,
      labels.NORM: norm,
      labels.NORM_SQUARED: norm ** 2,
      labels.CLOSED_FORM: closed,
      labels.REL_ERR: abs(norm ** 2 - closed) / closed if is_neg_log else math.nan,
    })
  table = report.add_table('decay', util.records_frame(
    rows, [labels.N, labels.NORM, labels.NORM_SQUARED, labels.CLOSED_FORM,
           labels.REL_ERR]))

  values = table[labels.NORM].to_numpy()
  rises = np.diff(values) > config.conv_tol * np.maximum(values[1:], 1e-300)
  report.check('monomial_decay.nonincreasing', not np.any(rises),
               f'norms {values.tolist()}')

  if is_neg_log and p == 2:
    n = table[labels.N].to_numpy()
    truncated = special.polygamma(1, n + 1) - special.polygamma(1, n + order + 1)
    gap = float(np.max(np.abs(table[labels.NORM_SQUARED].to_numpy() - truncated)))
    report.check('monomial_decay.closed_form', gap <= config.identity_tol,
                 f'max gap {gap:.3e} against the truncated closed form')
    tail = n >= 16
    if tail.sum() >= 2:
      slope = util.fit_slope(n[tail], values[tail])
      report.notes.append(f'log-log slope {slope:.6f}')
      report.check('monomial_decay.slope',
                   abs(slope - DECAY_SLOPE) <= DECAY_SLOPE_TOL,
                   f'slope {slope:.6f}')
  return report


# --- Witness pairs ---

OUTER_COMPANION = 'outer'
POLE_COMPANION = 'pole'

register('witness.hardy_diverging',
         'hardy_norm(f, p) is diverging with positive growth_fit')
register('witness.domain_converged',
         'optimal_domain_norm(g, f, p) is converged')
register('witness.member_both_converged',
         'for f in H^p: hardy_norm and optimal_domain_norm both converged')
register('witness.multiplied_converged',
         'hardy_norm((z - a) f, p) is converged')
register('witness.companion_bmoa',
         'the companion symbol k has a converged (bounded) Carleson '
         'BMOA seminorm in depth')


def _pole_companion(g, a, order):
  """k = int_0^z g'(t) / (t - a) dt for |a| = 1."""
  k = np.arange(order + 1)
  kernel = TaylorSeries(-(1 / a) ** (k + 1))
  return series.antiderivative(
    series.cauchy_product(series.differentiate(g), kernel, order - 1))


def witness_report(g, p, f, companion=None, a=-1.0, member=False,
                   config=None):
  """Dual verdict for f against H^p and [T_g, H^p].

  Args:
    g, f: FunctionSpecs or catalog names.
    p (float): Hardy exponent.
    companion (str): `outer` attaches k = T_g(1/psi) with its BMOA
      verdicts; `pole` attaches k = int g'/(t - a), the Carleson verdict
      of k and the H^p verdict of (z - a) f.
    a (complex): pole on the circle for the `pole` companion.
    member (bool): f is expected to lie in H^p; then both verdicts must
      converge and their ratio is reported.
  """
  config = _config(config)
  g_spec, f_spec = as_spec(g), as_spec(f)
  report = _report(WITNESS, config, g=g_spec, f=f_spec, p=p,
                   companion=companion, a=util.encode_complex(a),
                   member=member)
  ladder = run_ladder(config)
  symbol = realize(g_spec, config.order)
  fn = realize(f_spec, config.order)

  hardy = report.add_verdict('hardy', norms.hardy_norm(
    fn, p, ladder, config.conv_tol))
  domain = report.add_verdict('domain', norms.optimal_domain_norm(
    symbol, fn, p, ladder, config.conv_tol))

  if member:
    ratio = domain.value / hardy.value if hardy.value else math.nan
    report.notes.append(f'domain/hardy ratio {ratio:.12g}')
    report.check('witness.member_both_converged',
                 hardy.converged and domain.converged,
                 f'hardy {hardy.status}, domain {domain.status}',
                 cites=('hardy', 'domain'))
  else:
    report.check('witness.hardy_diverging',
                 hardy.diverging and (hardy.growth_fit or 0) > 0,
                 f'hardy {hardy.status}, growth {hardy.growth_fit}',
                 cites=('hardy',))
    report.check('witness.domain_converged', domain.converged,
                 f'domain {domain.status}, increment {domain.increment}',
                 cites=('domain',))

  if companion == OUTER_COMPANION:
    psi = realize(FunctionSpec.outer_three_minus_log(), config.order)
    k = operators.volterra(symbol, series.reciprocal(psi)).truncate(
      config.order)
    report.add_verdict('companion_bmoa', norms.bmoa_norm_mobius(
      k, ladder=ladder, angles=grid_angles(config, 64),
      tol=config.conv_tol))
    report.add_verdict('companion_carleson', norms.carleson_seminorm(
      k, config.depth))
  elif companion == POLE_COMPANION:
    k = _pole_companion(symbol, complex(a), config.order)
    carleson = report.add_verdict(
      'companion_carleson', norms.carleson_seminorm(k, config.depth))
    report.check('witness.companion_bmoa', carleson.converged,
                 f'per-depth maxima {list(carleson.samples)}',
                 cites=('companion_carleson',))
    shifted = TaylorSeries([-complex(a), 1.0])
    multiplied = report.add_verdict('multiplied', norms.hardy_norm(
      series.cauchy_product(shifted, fn, config.order), p, ladder,
      config.conv_tol))
    report.check('witness.multiplied_converged', multiplied.converged,
                 f'(z - a) f: {multiplied.status}', cites=('multiplied',))
  elif companion is not None:
    raise(ValueError(f'unknown companion `{companion}`'))
  return report


# --- Intersection over BMOA symbols ---

register('intersection.sup_bounds_norm',
         'if sup_n ||F_n||_p converged then hardy_norm(f, p) converged and '
         '||f||_p <= sup_n ||F_n||_p * (1 + 1e-2)')
register('intersection.divergence_matches',
         'if ||F_n||_p is diverging in n then hardy_norm(f, p) is diverging')
register('intersection.coefficients_approach',
         'max_k |[F_n - f]_k| is nonincreasing in n')


def intersection_probe(f, n_list=(1, 2, 4, 8, 16, 32, 64, 128, 256),
                       p=2, config=None):
  """F_n = z^-n S_f(z^n) against f.

  ||F_n||_2 is the exact coefficient norm of the truncation (order raised
  to 64 * max(n)); other p use `hardy_norm` per n.
  """
  config = _config(config)
  f_spec = as_spec(f)
  n_list = sorted(set(int(n) for n in n_list))
  order = max(config.order, ORDER_PER_DEGREE * n_list[-1])
  report = _report(INTERSECTION, config, f=f_spec, n_list=n_list, p=p,
                   order=order)
  ladder = run_ladder(config)
  fn = realize(f_spec, order)

  rows = []
  for n in n_list:
    companion = operators.companion_on_monomial(fn, n)
    if p == 2:
      norm = norms.h2_norm_exact(companion)
    else:
      norm = norms.hardy_norm(companion, p, ladder, config.conv_tol).value
    gap = float(np.max(np.abs(companion.coeffs - fn.coeffs)))
    rows.append({labels.N: n, labels.NORM: norm, labels.COEFF_GAP: gap})
  table = report.add_table('companions', util.records_frame(
    rows, [labels.N, labels.NORM, labels.COEFF_GAP]))

  sup = report.add_verdict('sup_n', norms.sequence_estimate(
    np.maximum.accumulate(table[labels.NORM].to_numpy()),
    np.log(table[labels.N].to_numpy()), power=p, kind='sup_n ||F_n||',
    tol=config.conv_tol))
  hardy = report.add_verdict('hardy', norms.hardy_norm(
    fn, p, ladder, config.conv_tol))

  if sup.converged:
    bounded = hardy.converged and hardy.value <= sup.value * (1 + 1e-2)
    report.check('intersection.sup_bounds_norm', bounded,
                 f'||f|| {hardy.value:.12g} ({hardy.status}), '
                 f'sup {sup.value:.12g}', cites=('sup_n', 'hardy'))
  if sup.diverging:
    report.check('intersection.divergence_matches', hardy.diverging,
                 f'hardy {hardy.status}', cites=('sup_n', 'hardy'))
  gaps = table[labels.COEFF_GAP].to_numpy()
  report.check('intersection.coefficients_approach',
               np.all(np.diff(gaps) <= 1e-15 * max(gaps.max(), 1.0)),
               f'gaps {gaps.tolist()}')
  return report


# --- Multipliers of [T_g, H^p] ---

register('multiplier.bounded_by_hinf',
         'when ||h||_inf converged: max ratio ||T_g(hf)||_p / ||T_g f||_p '
         '<= ||h||_inf * (1 + 1e-3)')
register('multiplier.ratio_increasing',
         'when ||h||_inf is not converged: the ratio table is strictly '
         'increasing along the family')


def concentration_family(count=10):
  """f_k = (1 - z)^(-1/2 + 1/k), k = 2 .. count + 1."""
  return [FunctionSpec.binomial_power(-0.5 + 1 / k)
          for k in range(2, count + 2)]


def multiplier_probe(g, h, p=2, family=None, config=None):
  """Operator ratios ||M_h f|| / ||f|| in [T_g, H^p] over a family."""
  config = _config(config)
  g_spec, h_spec = as_spec(g), as_spec(h)
  family = [as_spec(f) for f in (family or concentration_family())]
  report = _report(MULTIPLIER, config, g=g_spec, h=h_spec, p=p,
                   family=[f.to_dict() for f in family])
  ladder = run_ladder(config)
  symbol = realize(g_spec, config.order)
  multiplier = realize(h_spec, config.order)
  hinf = report.add_verdict('hinf', norms.hinf_norm(multiplier, ladder))

  rows = []
  for i, f_spec in enumerate(family):
    fn = realize(f_spec, config.order)
    base = norms.optimal_domain_norm(symbol, fn, p, ladder, config.conv_tol)
    image = norms.optimal_domain_norm(
      symbol, series.cauchy_product(multiplier, fn, config.order), p, ladder,
      config.conv_tol)
    report.add_verdict(f'family_{i}', base)
    report.add_verdict(f'family_{i}_times_h', image)
    rows.append({
      labels.INDEX: i,
      labels.FUNCTION: f_spec.describe(),
      labels.NORM: base.value,
      labels.VALUE: image.value,
      labels.RATIO: image.value / base.value if base.value else math.nan,
    })
  table = report.add_table('ratios', util.records_frame(
    rows, [labels.INDEX, labels.FUNCTION, labels.NORM, labels.VALUE,
           labels.RATIO]))

  ratios = table[labels.RATIO].to_numpy()
  if hinf.converged:
    worst = float(np.nanmax(ratios))
    report.check('multiplier.bounded_by_hinf',
                 worst <= hinf.value * (1 + 1e-3),
                 f'max ratio {worst:.12g}, ||h||_inf {hinf.value:.12g}',
                 cites=('hinf',))
  else:
    report.check('multiplier.ratio_increasing', np.all(np.diff(ratios) > 0),
                 f'ratios {ratios.tolist()}', cites=('hinf',))
  return report


# --- Cyclicity in A^2_1 ---

register('cyclicity.nonincreasing',
         'residuals are nonincreasing in N')
register('cyclicity.one_dim',
         'N = 0: |residual^2 - (||1||^2 - |<1,S>|^2 / ||S||^2)| '
         '<= identity_tol')
register('cyclicity.brute_force',
         'for N <= 8: |residual - dense normal-equation residual| <= 1e-8')
register('cyclicity.control_closed_form',
         'control (1 - z): |residual^2 - 6/((N+2)(N+3)(N+4))| <= 1e-10')
register('cyclicity.gap',
         'singular inner symbol: residual >= 2 * control residual at every N '
         'in degrees with N >= 8')
register('cyclicity.unit_exact',
         'symbol with constant value: residual <= identity_tol at N = 0')

BRUTE_FORCE_MAX_DEGREE = 8


def _weighted_design(symbol, max_degree, order):
  """sqrt(w) * [S, zS, ..., z^N S] through degree `order`, and sqrt(w) * 1."""
  s = np.zeros(order + 1, dtype=complex)
  s[:min(order, symbol.order) + 1] = symbol.coeffs[:order + 1]
  design = np.zeros((order + 1, max_degree + 1), dtype=complex)
  for j in range(max_degree + 1):
    design[j:, j] = s[:order + 1 - j]
  root = np.sqrt(norms.a21_weights(order))
  target = np.zeros(order + 1, dtype=complex)
  target[0] = 1.0
  return root[:, None] * design, root * target


def a21_residuals(symbol, max_degree, order=None, strict=False):
  """min over deg p <= N of ||1 - p S||_{A^2_1}, for N = 0..max_degree.

  One QR of the weighted design matrix serves every N, since the column
  spaces are nested.

  Returns:
    tuple: (ndarray of residuals, condition estimate of R).
  """
  order = order or symbol.order
  design, target = _weighted_design(symbol, max_degree, order)
  q, r = linalg.qr(design, mode='economic')
  projections = np.abs(q.conj().T @ target) ** 2
  squared = np.maximum(
    float(np.vdot(target, target).real) - np.cumsum(projections), 0.0)
  diagonal = np.abs(np.diag(r))
  condition = float((diagonal.max() / diagonal.min()) ** 2) \
    if diagonal.min() > 0 else math.inf
  if condition > Config.COND_THRESHOLD:
    logger.warning('A^2_1 Gram condition estimate %.3e above %.1e',
                   condition, Config.COND_THRESHOLD)
    if strict:
      raise(IllConditioned(condition, Config.COND_THRESHOLD))
  return np.sqrt(squared), condition


def brute_force_residual(symbol, degree):
  """Same minimum from the dense Gram matrix of a21_inner."""
  basis = [series.shift(symbol, j).truncate(symbol.order)
           for j in range(degree + 1)]
  one = TaylorSeries.unit(symbol.order)
  gram = np.array([[norms.a21_inner(bk, bj) for bk in basis] for bj in basis])
  rhs = np.array([norms.a21_inner(one, bj) for bj in basis])
  coef = np.linalg.solve(gram, rhs)
  return math.sqrt(max(1.0 - float(np.vdot(rhs, coef).real), 0.0))


def cyclicity_residual(symbol, degrees=(0, 1, 2, 4, 8, 16, 32, 64),
                       control=True, config=None):
  """Residual curve ||1 - p S||_{A^2_1} against the (1 - z) control."""
  config = _config(config)
  s_spec = as_spec(symbol)
  degrees = sorted(set(int(n) for n in degrees))
  report = _report(CYCLICITY, config, symbol=s_spec, degrees=degrees,
                   control=control)
  max_degree = degrees[-1]
  order = max(config.order, 8 * max_degree)
  s = realize(s_spec, order)

  residuals, condition = a21_residuals(s, max_degree, strict=config.strict)
  report.notes.append(f'condition estimate {condition:.6e}')
  if condition > Config.COND_THRESHOLD:
    report.notes.append('IllConditioned: orthogonalized basis used')
  brute = {
    n: brute_force_residual(s, n)
    for n in range(min(max_degree, BRUTE_FORCE_MAX_DEGREE) + 1)
  }
  columns = [labels.DEGREE, labels.RESIDUAL, labels.BRUTE_FORCE]
  if control:
    reference, _ = a21_residuals(
      TaylorSeries([1.0, -1.0], series.TailHint.exact()), max_degree,
      order=order)
    columns.append(labels.CONTROL_RESIDUAL)

  rows = []
  for n in degrees:
    row = {labels.DEGREE: n, labels.RESIDUAL: residuals[n],
           labels.BRUTE_FORCE: brute.get(n, math.nan)}
    if control:
      row[labels.CONTROL_RESIDUAL] = reference[n]
    rows.append(row)
  report.add_table('residuals', util.records_frame(rows, columns))

  report.check('cyclicity.nonincreasing',
               np.all(np.diff(residuals) <= 0), f'{residuals.tolist()}')

  one = TaylorSeries.unit(s.order)
  s_norm2 = norms.a21_inner(s, s).real
  projection = abs(norms.a21_inner(one, s)) ** 2 / s_norm2 if s_norm2 else 0.0
  gap = abs(residuals[0] ** 2 - (1.0 - projection))
  report.check('cyclicity.one_dim', gap <= config.identity_tol,
               f'gap {gap:.3e}')

  worst = max(abs(residuals[n] - b) for n, b in brute.items())
  report.check('cyclicity.brute_force', worst <= 1e-8, f'max gap {worst:.3e}')

  if s.is_constant() and s.coeffs[0] != 0:
    report.check('cyclicity.unit_exact', residuals[0] <= config.identity_tol,
                 f'residual {residuals[0]:.3e}')

  if control:
    n = np.arange(max_degree + 1)
    closed = 6 / ((n + 2) * (n + 3) * (n + 4))
    gap = float(np.max(np.abs(reference ** 2 - closed)))
    report.check('cyclicity.control_closed_form', gap <= 1e-10,
                 f'gap {gap:.3e}')
    if s_spec.kind == catalog.SINGULAR_INNER:
      common = [n for n in degrees if n >= 8]
      ratios = [residuals[n] / reference[n] for n in common]
      report.check('cyclicity.gap', all(q >= 2 for q in ratios),
                   f'ratios {ratios}')
  return report


# --- Bounded Volterra operators between Hardy spaces ---

register('aleman_cima.agree',
         'growth_sup(g, 1 - a, derivative) is converged iff the normalized '
         'kernel images ||T_g k_r||_p2 are converged in r, a = 1/p1 - 1/p2')
register('aleman_cima.monomials_bounded',
         'if the Lipschitz seminorm converged then sup_n ||T_g(z^n)||_p2 '
         'is not diverging')
register('aleman_cima.lipschitz_closed_form',
         'for g = (1 - z)^a: |Lambda_a seminorm - a 2^(1-a)| <= 1e-3')

# Kernel radii 1 - 2^-j stop here; deeper kernels need larger orders.
KERNEL_DEPTH = 8


def normalized_kernel(r, p, order):
  """k_r = (1 - r^2)^(1/p) (1 - r z)^(-2/p), with ||k_r||_p = 1."""
  k = np.arange(order + 1)
  alpha = -2 / p
  ratio = np.ones(order + 1)
  ratio[1:] = (k[1:] - 1 - alpha) / k[1:] * r
  coeffs = np.cumprod(ratio) * (1 - r ** 2) ** (1 / p)
  return TaylorSeries(coeffs)


def aleman_cima_probe(g, p1, p2, n_list=(1, 2, 4, 8, 16, 32, 64),
                      config=None):
  """T_g : H^p1 -> H^p2 tested on monomials and on normalized kernels,
  against the Lipschitz seminorm of g of order 1/p1 - 1/p2."""
  if not 1 <= p1 < p2:
    raise(ValueError(f'need 1 <= p1 < p2, got p1={p1}, p2={p2}'))
  config = _config(config)
  g_spec = as_spec(g)
  n_list = sorted(set(int(n) for n in n_list))
  a = 1 / p1 - 1 / p2
  report = _report(ALEMAN_CIMA, config, g=g_spec, p1=p1, p2=p2,
                   n_list=n_list, a=a)
  ladder = run_ladder(config)
  symbol = realize(g_spec, config.order)

  lipschitz = report.add_verdict('lipschitz', norms.growth_sup(
    symbol, 1 - a, True, ladder, config.conv_tol))

  rows = []
  for n in n_list:
    image = operators.volterra(symbol, TaylorSeries.monomial(n)).truncate(
      config.order)
    estimate = norms.hardy_norm(image, p2, ladder, config.conv_tol)
    rows.append({labels.N: n, labels.NORM: estimate.value,
                 labels.STATUS: estimate.status})
  monomials = report.add_table('monomials', util.records_frame(
    rows, [labels.N, labels.NORM, labels.STATUS]))
  sup_monomials = report.add_verdict('sup_monomials', norms.sequence_estimate(
    np.maximum.accumulate(monomials[labels.NORM].to_numpy()),
    np.log(monomials[labels.N].to_numpy()), power=p2,
    kind='sup_n ||T_g z^n||', tol=config.conv_tol))

  rows = []
  depth = min(KERNEL_DEPTH, config.ladder)
  for r in RadiusLadder(depth).radii:
    kernel = normalized_kernel(r, p1, config.order)
    image = operators.volterra(symbol, kernel).truncate(config.order)
    estimate = norms.hardy_norm(image, p2, ladder, config.conv_tol)
    rows.append({labels.RADIUS: r, labels.NORM: estimate.value,
                 labels.STATUS: estimate.status})
  kernels = report.add_table('kernels', util.records_frame(
    rows, [labels.RADIUS, labels.NORM, labels.STATUS]))
  kernel_sup = report.add_verdict('kernels', norms.sequence_estimate(
    np.maximum.accumulate(kernels[labels.NORM].to_numpy()),
    -np.log1p(-kernels[labels.RADIUS].to_numpy()), power=p2,
    kind='sup_r ||T_g k_r||', tol=config.conv_tol))

  report.check('aleman_cima.agree',
               lipschitz.converged == kernel_sup.converged,
               f'lipschitz {lipschitz.status}, kernels {kernel_sup.status}',
               cites=('lipschitz', 'kernels'))
  if lipschitz.converged:
    report.check('aleman_cima.monomials_bounded', not sup_monomials.diverging,
                 f'monomials {sup_monomials.status}',
                 cites=('sup_monomials',))
  if (g_spec.kind == catalog.BINOMIAL_POWER
      and abs(g_spec.alpha - a) < 1e-12):
    closed = a * 2 ** (1 - a)
    report.check('aleman_cima.lipschitz_closed_form',
                 abs(lipschitz.value - closed) <= 1e-3,
                 f'{lipschitz.value:.12g} vs {closed:.12g}',
                 cites=('lipschitz',))
  return report


# --- Blaschke factors of g' ---

register('blaschke.modulus_diverging',
         'max_|z|=r |B(z)| (1 - r)^-(1/p1 - 1/p2) is diverging along the ladder')
register('blaschke.witness_p1_converged',
         'hardy_norm(T_g(phi), p1) is converged')
register('blaschke.witness_p2_diverging',
         'hardy_norm(T_g(phi), p2) is diverging')
register('blaschke.witness_closed_form',
         'for g = z: max |[T_g(phi)]_k - [p2((1 - z)^(-1/p2) - 1)]_k| <= '
         'identity_tol * max(1, max_k |coefficient|)')


def witness_phi(g, p2, order):
  """phi = (1 - z)^(-1/p2 - 1) / g'."""
  power = realize(FunctionSpec.binomial_power(-1 / p2 - 1), order)
  derivative = series.differentiate(g)
  if derivative.order < order:
    derivative = TaylorSeries(
      np.concatenate([derivative.coeffs,
                      np.zeros(order - derivative.order)]),
      series.TailHint.exact())
  return series.cauchy_product(
    power, series.reciprocal(derivative, order), order)


def blaschke_case_probe(b_params=(0.0,), p1=1, p2=2, g=None, config=None):
  """Both halves of the g' = B G argument.

  (i) for the Blaschke product B with zeros `b_params`, the weighted
  maximum modulus |B| (1 - r)^-(1/p1 - 1/p2) must blow up;
  (ii) for g' without zeros, T_g(phi) lies in H^p1 but not in H^p2.
  """
  if not 1 <= p1 < p2:
    raise(ValueError(f'need 1 <= p1 < p2, got p1={p1}, p2={p2}'))
  config = _config(config)
  g_spec = as_spec(g) if g is not None else FunctionSpec.monomial(1)
  factors = [FunctionSpec.blaschke_factor(b) for b in b_params]
  b_spec = factors[0] if len(factors) == 1 else FunctionSpec.product(factors)
  report = _report(BLASCHKE_CASE, config, b=b_spec, g=g_spec, p1=p1, p2=p2)
  ladder = run_ladder(config)
  epsilon = 1 / p1 - 1 / p2

  blaschke = realize(b_spec, config.order)
  count = series.circle_size(blaschke.order)
  rows, samples, ok = [], [], []
  for r in ladder.radii:
    modulus = float(np.max(np.abs(
      series.evaluate_on_circle(blaschke, r, count))))
    weighted = modulus * (1 - r) ** -epsilon
    samples.append(weighted)
    ok.append(series.tail_error(blaschke, r) <= Config.SAFE_TAIL_TOL)
    rows.append({labels.RADIUS: r, labels.VALUE: modulus,
                 labels.GROWTH: weighted})
  report.add_table('blaschke', util.records_frame(
    rows, [labels.RADIUS, labels.VALUE, labels.GROWTH]))
  safe = next((i for i, flag in enumerate(ok) if not flag), len(ok))
  modulus = report.add_verdict('blaschke_growth', norms.sequence_estimate(
    np.maximum.accumulate(samples), ladder.abscissae, safe,
    kind='|B| (1-r)^-eps', tol=config.conv_tol))
  report.check('blaschke.modulus_diverging', modulus.diverging,
               f'{modulus.status}', cites=('blaschke_growth',))

  symbol = realize(g_spec, config.order)
  phi = witness_phi(symbol, p2, config.order)
  image = operators.volterra(symbol, phi).truncate(config.order)
  low = report.add_verdict('image_p1', norms.hardy_norm(
    image, p1, ladder, config.conv_tol))
  high = report.add_verdict('image_p2', norms.hardy_norm(
    image, p2, ladder, config.conv_tol))
  report.check('blaschke.witness_p1_converged', low.converged,
               f'{low.status}', cites=('image_p1',))
  report.check('blaschke.witness_p2_diverging', high.diverging,
               f'{high.status}, growth {high.growth_fit}',
               cites=('image_p2',))

  if g_spec == FunctionSpec.monomial(1):
    closed = realize(FunctionSpec.binomial_power(-1 / p2), config.order)
    expected = p2 * closed.coeffs
    expected[0] -= p2
    gap = float(np.max(np.abs(image.coeffs - expected)))
    report.check('blaschke.witness_closed_form',
                 gap <= config.identity_tol * max(
                   1.0, float(np.max(np.abs(expected)))),
                 f'gap {gap:.3e}')
  return report


# --- Korenblum spaces ---

register('korenblum.verdicts_agree',
         'K_(delta-gamma) norm of g and the operator ratio have the same '
         'converged/not-converged verdict')
register('korenblum.ratio_within_factor',
         'when converged: operator ratio / ||g||_K(delta-gamma) in [1/4, 4]')
register('growth_pair.expected',
         'the two-sided bound verdict equals the expected one')

# Test family (1 - lambda z)^-gamma, lambda on this many roots of unity.
KORENBLUM_FAMILY_SIZE = 8


def korenblum_multiplier_probe(g, gamma, delta, config=None):
  """M_g : K_gamma -> K_delta against ||g|| in K_(delta - gamma)."""
  if not 0 <= gamma < delta < 1:
    raise(ValueError(
      f'need 0 <= gamma < delta < 1, got gamma={gamma}, delta={delta}'))
  config = _config(config)
  g_spec = as_spec(g)
  report = _report(KORENBLUM_MULTIPLIER, config, g=g_spec, gamma=gamma,
                   delta=delta)
  ladder = run_ladder(config)
  symbol = realize(g_spec, config.order)
  g_norm = report.add_verdict('g', norms.korenblum_norm(
    symbol, delta - gamma, ladder))

  rows, best, best_name = [], -math.inf, None
  for i in range(KORENBLUM_FAMILY_SIZE):
    lam = complex(np.exp(2j * np.pi * i / KORENBLUM_FAMILY_SIZE))
    f_spec = FunctionSpec.shifted_binomial_power(-gamma, lam.conjugate())
    fn = realize(f_spec, config.order)
    base = norms.korenblum_norm(fn, gamma, ladder)
    image = norms.korenblum_norm(
      series.cauchy_product(symbol, fn, config.order), delta, ladder)
    report.add_verdict(f'lambda_{i}', image)
    ratio = image.value / base.value
    rows.append({labels.INDEX: i, labels.NORM: base.value,
                 labels.VALUE: image.value, labels.RATIO: ratio,
                 labels.STATUS: image.status})
    if ratio > best:
      best, best_name = ratio, f'lambda_{i}'
  report.add_table('operator', util.records_frame(
    rows, [labels.INDEX, labels.NORM, labels.VALUE, labels.RATIO,
           labels.STATUS]))

  worst = report.verdicts[best_name]
  report.check('korenblum.verdicts_agree',
               g_norm.converged == worst.converged,
               f'g {g_norm.status}, operator {worst.status}',
               cites=('g', best_name))
  if g_norm.converged and worst.converged:
    factor = best / g_norm.value
    report.check('korenblum.ratio_within_factor', 0.25 <= factor <= 4,
                 f'ratio {best:.12g}, ||g|| {g_norm.value:.12g}')
  return report


def growth_pair_verify(f1, f2, alpha, expect_pair=False, angles=None,
                       config=None):
  """Two-sided check of |f1| + |f2| ~ (1 - |z|)^-alpha on the grid.

  Verifier only: it reports min and max of (|f1| + |f2|)(1 - |z|)^alpha
  per ladder radius and whether their ratio stays bounded.
  """
  config = _config(config)
  f1_spec, f2_spec = as_spec(f1), as_spec(f2)
  angles = angles or grid_angles(config, 64)
  report = _report(GROWTH_PAIR, config, f1=f1_spec, f2=f2_spec,
                   alpha=alpha, expect_pair=expect_pair, angles=angles)
  ladder = run_ladder(config)
  first = realize(f1_spec, config.order)
  second = realize(f2_spec, config.order)
  safe = min(series.safe_radius(first), series.safe_radius(second))
  count = max(angles, series.circle_size(config.order))
  step = count // angles

  rows, spreads = [], []
  for r in ladder.radii:
    if r >= safe:
      break
    total = (np.abs(series.evaluate_on_circle(first, r, count))
             + np.abs(series.evaluate_on_circle(second, r, count)))
    weighted = total[::step] * (1 - r) ** alpha
    lower, upper = float(weighted.min()), float(weighted.max())
    spreads.append(upper / lower if lower > 0 else math.inf)
    rows.append({labels.RADIUS: r, labels.LOWER: lower, labels.UPPER: upper,
                 labels.RATIO: spreads[-1]})
  report.add_table('bounds', util.records_frame(
    rows, [labels.RADIUS, labels.LOWER, labels.UPPER, labels.RATIO]))

  spread = report.add_verdict('spread', norms.sequence_estimate(
    np.maximum.accumulate(spreads), ladder.abscissae[:len(spreads)],
    kind='max/min', safe_radius=safe, tol=config.conv_tol))
  two_sided = bool(spreads) and not spread.diverging and math.isfinite(
    spread.value)
  report.notes.append(
    'passes two-sided bound' if two_sided else 'fails two-sided bound')
  report.check('growth_pair.expected', two_sided == expect_pair,
               f'two-sided {two_sided}', cites=('spread',))
  report.notes.append('no construction of pairs is attempted')
  return report


# --- Point evaluation in the optimal domain ---

register('point_evaluation.bounded',
         'when optimal_domain_norm converged: sup over the grid of '
         '|f g\'|(1 - |z|)^(1 + 1/p) / ||f||_[T_g,H^p] is not diverging '
         'along the ladder')


def point_evaluation_probe(g, f, p=2, angles=None, config=None):
  """Derivative point-evaluation bound for T_g f, normalized by the
  domain norm."""
  config = _config(config)
  angles = angles or grid_angles(config, 64)
  g_spec, f_spec = as_spec(g), as_spec(f)
  report = _report(POINT_EVALUATION, config, g=g_spec, f=f_spec, p=p,
                   angles=angles)
  ladder = run_ladder(config)
  symbol = realize(g_spec, config.order)
  fn = realize(f_spec, config.order)
  domain = report.add_verdict('domain', norms.optimal_domain_norm(
    symbol, fn, p, ladder, config.conv_tol))

  integrand = series.cauchy_product(
    fn, series.differentiate(symbol), min(fn.order, symbol.order - 1))
  safe = series.safe_radius(integrand)
  count = max(angles, series.circle_size(integrand.order))
  rows, samples = [], []
  for r in ladder.radii:
    if r >= safe:
      break
    values = np.abs(series.evaluate_on_circle(integrand, r, count))
    value = float(values.max()) * (1 - r) ** (1 + 1 / p) / domain.value
    samples.append(value)
    rows.append({labels.RADIUS: r, labels.RATIO: value})
  report.add_table('point_evaluation', util.records_frame(
    rows, [labels.RADIUS, labels.RATIO]))
  bound = report.add_verdict('bound', norms.sequence_estimate(
    np.maximum.accumulate(samples), ladder.abscissae[:len(samples)],
    kind='point evaluation', safe_radius=safe, tol=config.conv_tol))
  if domain.converged:
    report.check('point_evaluation.bounded',
                 bool(samples) and not bound.diverging,
                 f'{bound.status}, sup {bound.value:.12g}',
                 cites=('domain', 'bound'))
  return report


# --- [T_g, H^p] is not conformally invariant ---

register('conformal_invariance.verdicts',
         'for f = (1 - z)^(-2/(3p)): (hardy, domain, bloch) verdicts are '
         '(converged, converged, diverging)')


def conformal_invariance_probe(g=None, p=2, config=None):
  """A member of H^p, hence of [T_g, H^p], that is not in the Bloch
  space."""
  config = _config(config)
  g_spec = as_spec(g) if g is not None else FunctionSpec.monomial(1)
  f_spec = FunctionSpec.binomial_power(-2 / (3 * p))
  report = _report(CONFORMAL_INVARIANCE, config, g=g_spec, f=f_spec, p=p)
  ladder = run_ladder(config)
  symbol = realize(g_spec, config.order)
  fn = realize(f_spec, config.order)

  hardy = report.add_verdict('hardy', norms.hardy_norm(
    fn, p, ladder, config.conv_tol))
  domain = report.add_verdict('domain', norms.optimal_domain_norm(
    symbol, fn, p, ladder, config.conv_tol))
  bloch = report.add_verdict('bloch', norms.bloch_norm(fn, ladder))
  triple = (hardy.status, domain.status, bloch.status)
  report.check('conformal_invariance.verdicts',
               triple == (CONVERGED, CONVERGED, DIVERGING), f'{triple}',
               cites=('hardy', 'domain', 'bloch'))
  return report


# --- Companion operators on monomials ---

register('companion_ratio.bounded',
         'for f with converged H^p norm: every ||F_n||_p / (||z^n||_* '
         '||f||_p) <= 1 + 1e-3')
register('companion_ratio.growing',
         'for f with diverging H^p norm: the normalized ratios are not '
         'bounded by their first value')


def companion_ratio_probe(f, n_list=(1, 2, 4, 8), p=2, angles=None,
                          config=None):
  """Lower estimates of the constant in ||f||_p ~ ||S_f||_(BMOA -> H^p)
  from monomials."""
  config = _config(config)
  angles = angles or grid_angles(config, 16)
  f_spec = as_spec(f)
  n_list = sorted(set(int(n) for n in n_list))
  report = _report(COMPANION_RATIO, config, f=f_spec, n_list=n_list, p=p,
                   angles=angles)
  ladder = run_ladder(config)
  fn = realize(f_spec, config.order)
  hardy = report.add_verdict('hardy', norms.hardy_norm(
    fn, p, ladder, config.conv_tol))

  rows = []
  for n in n_list:
    image = norms.hardy_norm(
      operators.companion_on_monomial(fn, n), p, ladder, config.conv_tol)
    monomial = norms.bmoa_norm_mobius(
      TaylorSeries.monomial(n), ladder=ladder, angles=angles,
      tol=config.conv_tol)
    report.add_verdict(f'bmoa_z^{n}', monomial)
    rows.append({
      labels.N: n,
      labels.NORM: image.value,
      labels.BMOA_MONOMIAL: monomial.value,
      labels.RATIO: image.value / (monomial.value * hardy.value),
    })
  table = report.add_table('ratios', util.records_frame(
    rows, [labels.N, labels.NORM, labels.BMOA_MONOMIAL, labels.RATIO]))

  ratios = table[labels.RATIO].to_numpy()
  if hardy.converged:
    report.check('companion_ratio.bounded', np.all(ratios <= 1 + 1e-3),
                 f'ratios {ratios.tolist()}', cites=('hardy',))
  elif hardy.diverging:
    report.check('companion_ratio.growing', ratios.max() > ratios[0],
                 f'ratios {ratios.tolist()}', cites=('hardy',))
  return report


# --- Density of polynomials in A^2_w ---

register('polynomial_density.decreasing',
         'weighted residuals are nonincreasing in N and the last is at most '
         '1/4 of the degree-0 residual')


def weighted_gram(g, target, max_degree, points=Config.GAUSS_POINTS):
  """Gram matrix <z^k, z^j>_w, moments <target, z^j>_w and ||target||_w^2
  for w = |g'|^2 (1 - |z|^2), by polar quadrature.

  The weight is not radial, so each circle contributes the Fourier
  coefficients of w (and of target * w) through one FFT.
  """
  derivative = series.differentiate(g)
  r_max = min(series.safe_radius(derivative, 1e-6, relative=True),
              series.safe_radius(target, 1e-6, relative=True))
  grid = PolarGrid.gauss(points, r_max=r_max)
  count = max(series.circle_size(derivative.order + target.order),
              4 * (max_degree + 1))

  j = np.arange(max_degree + 1)
  offsets = j[:, None] - j[None, :]
  gram = np.zeros((max_degree + 1, max_degree + 1), dtype=complex)
  moments = np.zeros(max_degree + 1, dtype=complex)
  norm2 = 0.0
  for r, weight in zip(grid.radii, grid.weights):
    w = np.abs(series.evaluate_on_circle(derivative, r, count)) ** 2 \
      * (1 - r ** 2)
    h = series.evaluate_on_circle(target, r, count)
    # hat(m) = mean over the circle of F e^{-i m t}
    w_hat = np.fft.fft(w) / count
    hw_hat = np.fft.fft(h * w) / count
    powers = r ** j
    # gram[j, k] = <z^k, z^j>_w = r^(j+k) hat(w)(j - k)
    gram += weight * np.outer(powers, powers) * w_hat[offsets % count]
    moments += weight * powers * hw_hat[j]
    norm2 += weight * float(np.mean(np.abs(h) ** 2 * w))
  return gram, moments, norm2


def nested_residuals(gram, moments, norm2):
  """Residuals of the projections onto span{z^0..z^N}, N = 0..len-1."""
  lower = linalg.cholesky(gram, lower=True)
  y = linalg.solve_triangular(lower, moments, lower=True)
  squared = np.maximum(norm2 - np.cumsum(np.abs(y) ** 2), 0.0)
  return np.sqrt(squared)


def polynomial_density_probe(g='exp_z', degrees=(0, 1, 2, 4, 8, 16, 32),
                             target='inv_half_power', config=None):
  """min over deg p <= N of ||target - p|| in A^2_w, w = |g'|^2 (1-|z|^2)."""
  config = _config(config)
  g_spec, h_spec = as_spec(g), as_spec(target)
  degrees = sorted(set(int(n) for n in degrees))
  report = _report(POLYNOMIAL_DENSITY, config, g=g_spec, target=h_spec,
                   degrees=degrees)
  symbol = realize(g_spec, config.order)
  h = realize(h_spec, config.order)
  gram, moments, norm2 = weighted_gram(
    symbol, h, degrees[-1], config.gauss_points)
  residuals = nested_residuals(gram, moments, norm2)

  rows = [{labels.DEGREE: n, labels.RESIDUAL: residuals[n]} for n in degrees]
  report.add_table('residuals', util.records_frame(
    rows, [labels.DEGREE, labels.RESIDUAL]))
  report.check('polynomial_density.decreasing',
               np.all(np.diff(residuals) <= 0)
               and residuals[-1] <= 0.25 * residuals[0],
               f'{residuals.tolist()}')
  report.notes.append('cyclicity of the singular inner symbol is the '
                      'non-dense control (see the cyclicity experiment)')
  return report


EXPERIMENTS = {
  MONOMIAL_DECAY: monomial_decay,
  WITNESS: witness_report,
  INTERSECTION: intersection_probe,
  MULTIPLIER: multiplier_probe,
  CYCLICITY: cyclicity_residual,
  ALEMAN_CIMA: aleman_cima_probe,
  BLASCHKE_CASE: blaschke_case_probe,
  KORENBLUM_MULTIPLIER: korenblum_multiplier_probe,
  GROWTH_PAIR: growth_pair_verify,
  POINT_EVALUATION: point_evaluation_probe,
  CONFORMAL_INVARIANCE: conformal_invariance_probe,
  COMPANION_RATIO: companion_ratio_probe,
  POLYNOMIAL_DENSITY: polynomial_density_probe,
}
