"""The paper-acceptance suite: the acceptance list as one reproducible run.

Criteria run as independent jobs on a thread pool of `RunConfig.threads`
workers, capped by `HVLAB_THREADS`. Reports are collected in criterion order and written by the
calling thread, so the output tree does not depend on scheduling.
"""
import concurrent.futures
import dataclasses
import hashlib
import json
import logging
import os

import numpy as np

from .. import catalog, labels, norms, operators, series, util
from ..catalog import FunctionSpec, realize
from ..config import Config, RunConfig
from ..series import TaylorSeries
from . import experiments
from .report import ExperimentReport, register


logger = logging.getLogger(__name__)


PAPER_ACCEPTANCE = 'paper-acceptance'
MANIFEST = 'manifest.json'
DETERMINISM = 'c12_determinism'

# Order at which -log(1 - z) resolves dyadic boxes down to depth 10.
CARLESON_ORDER = 1 << 20

# Random polynomials for the Cesaro identity.
CESARO_COUNT = 20
CESARO_DEGREE = 64

IBP_ORDER = 512

# Identity thresholds, as multiples of the run's identity_tol.
CESARO_TOL_SCALE = 0.1
PARSEVAL_TOL_SCALE = 100.0


register('acceptance.cesaro',
         'max coefficient gap between z C(f) and T_{-log(1-z)} f <= '
         'identity_tol / 10 on 20 random degree-64 polynomials')
register('acceptance.ibp',
         'ibp_defect <= identity_tol on every regression pair at order 512')
register('acceptance.parseval',
         '|mean_p(f, r, 2)^2 - sum |a_k|^2 r^(2k)| <= '
         '100 identity_tol max(1, value) '
         'over ladder radii below the safe radius, every catalog function')
register('acceptance.lp_sandwich',
         '||f||_2^2 / 2 <= Phi(f) <= ||f||_2^2 for every catalog function')
register('acceptance.lp_quadrature',
         '|Phi(f) by quadrature - Phi(f) by coefficients| <= 1e-8 max(1, Phi)')
register('acceptance.bmoa_closed_form',
         'bmoa_norm_mobius(z) lies in [1 - 1e-4, 1 + 1e-4]')
register('acceptance.bmoa_log_bounded',
         'Carleson-log seminorm of z is converged (bounded in depth)')
register('acceptance.bmoa_log_increasing',
         'per-depth Carleson-log maxima of -log(1-z) strictly increase over '
         'depths 1..L and the verdict is diverging')
register('acceptance.determinism',
         'outputs are byte-identical to the previous run in the same '
         'directory with the same config')


def _report(name, config, **parameters):
  return ExperimentReport(name, parameters=parameters, seed=config.seed,
                          config=config.to_dict())


def cesaro_identity(config):
  report = _report('c01_cesaro_identity', config, count=CESARO_COUNT,
                   degree=CESARO_DEGREE)
  rng = np.random.default_rng(config.seed)
  rows = []
  for i in range(CESARO_COUNT):
    coeffs = rng.standard_normal(CESARO_DEGREE + 1) \
      + 1j * rng.standard_normal(CESARO_DEGREE + 1)
    _, op_report = operators.apply(
      operators.CESARO, None, TaylorSeries(coeffs))
    rows.append({labels.INDEX: i,
                 labels.RESIDUAL: op_report.residuals['cesaro_identity']})
  table = report.add_table('cesaro', util.records_frame(
    rows, [labels.INDEX, labels.RESIDUAL]))
  worst = float(table[labels.RESIDUAL].max())
  report.check('acceptance.cesaro',
               worst <= CESARO_TOL_SCALE * config.identity_tol,
               f'max {worst:.3e}')
  return report


def ibp_identity(config):
  report = _report('c02_ibp_identity', config, order=IBP_ORDER,
                   pairs=[list(p) for p in catalog.REGRESSION_PAIRS])
  rows = []
  for g_name, f_name in catalog.REGRESSION_PAIRS:
    g = realize(catalog.CATALOG[g_name], IBP_ORDER)
    f = realize(catalog.CATALOG[f_name], IBP_ORDER)
    rows.append({'g': g_name, 'f': f_name,
                 labels.RESIDUAL: operators.ibp_defect(g, f)})
  table = report.add_table('ibp', util.records_frame(
    rows, ['g', 'f', labels.RESIDUAL]))
  worst = float(table[labels.RESIDUAL].max())
  report.check('acceptance.ibp', worst <= config.identity_tol,
               f'max {worst:.3e}')
  return report


def parseval_bridge(config):
  order = Config.IDENTITY_ORDER
  report = _report('c03_parseval_bridge', config, order=order)
  ladder = experiments.run_ladder(config)
  rows = []
  for name in sorted(catalog.CATALOG):
    f = realize(catalog.CATALOG[name], order)
    safe = series.safe_radius(f)
    for r in ladder.radii:
      if r >= safe:
        break
      parseval = series.majorant(f, r, power=2)
      quadrature = norms.mean_p(f, r, 2) ** 2
      rows.append({labels.FUNCTION: name, labels.RADIUS: r,
                   labels.VALUE: parseval,
                   labels.RESIDUAL: abs(quadrature - parseval)
                   / max(1.0, parseval)})
  table = report.add_table('parseval', util.records_frame(
    rows, [labels.FUNCTION, labels.RADIUS, labels.VALUE, labels.RESIDUAL]))
  worst = float(table[labels.RESIDUAL].max())
  report.check('acceptance.parseval',
               worst <= PARSEVAL_TOL_SCALE * config.identity_tol,
               f'max {worst:.3e}')
  return report


def lp_sandwich(config):
  order = Config.IDENTITY_ORDER
  report = _report('c04_lp_sandwich', config, order=order)
  rows = []
  for name in sorted(catalog.CATALOG):
    f = realize(catalog.CATALOG[name], order)
    h2 = norms.h2_norm_exact(f) ** 2
    phi = norms.lp_functional(f)
    quadrature = norms.lp_functional_quadrature(f)
    rows.append({
      labels.FUNCTION: name, labels.LOWER: h2 / 2, labels.VALUE: phi,
      labels.UPPER: h2,
      labels.RESIDUAL: abs(quadrature - phi) / max(1.0, phi),
    })
  table = report.add_table('lp', util.records_frame(
    rows, [labels.FUNCTION, labels.LOWER, labels.VALUE, labels.UPPER,
           labels.RESIDUAL]))
  slack = 1e-15 * np.maximum(table[labels.UPPER], 1.0)
  inside = (table[labels.LOWER] <= table[labels.VALUE] + slack) \
    & (table[labels.VALUE] <= table[labels.UPPER] + slack)
  report.check('acceptance.lp_sandwich', bool(inside.all()),
               f'outside: {table[labels.FUNCTION][~inside].tolist()}')
  worst = float(table[labels.RESIDUAL].max())
  report.check('acceptance.lp_quadrature', worst <= 1e-8, f'max {worst:.3e}')
  return report


def monomial_decay(config):
  return experiments.monomial_decay(
    FunctionSpec.neg_log(), 2, [1] + [16 << i for i in range(7)], config)


def outer_witness(config):
  return experiments.witness_report(
    FunctionSpec.monomial(1), 2, catalog.log_power_witness(2),
    companion=experiments.OUTER_COMPANION, config=config)


def pole_witness(config):
  return experiments.witness_report(
    FunctionSpec.neg_log(), 2, FunctionSpec.shifted_binomial_power(-1.25, -1.0),
    companion=experiments.POLE_COMPANION, a=-1.0, config=config)


def cyclicity(config):
  return experiments.cyclicity_residual(
    FunctionSpec.singular_inner(), [0, 1, 2, 4, 8, 16, 32, 64], config=config)


def multiplier_bounded(config):
  return experiments.multiplier_probe(
    FunctionSpec.monomial(1), catalog.CATALOG['mean_one_plus_z'], 2,
    config=config)


def multiplier_unbounded(config):
  return experiments.multiplier_probe(
    FunctionSpec.monomial(1), FunctionSpec.neg_log(), 2, config=config)


def blaschke_case(config):
  return experiments.blaschke_case_probe(
    (0.0,), 1, 2, FunctionSpec.monomial(1), config=config)


def bmoa_closed_form(config):
  report = _report('c11_bmoa_closed_form', config)
  estimate = report.add_verdict('bmoa_z', norms.bmoa_norm_mobius(
    TaylorSeries.monomial(1), ladder=experiments.run_ladder(config),
    angles=experiments.grid_angles(config, 64), tol=config.conv_tol))
  report.check('acceptance.bmoa_closed_form',
               abs(estimate.value - 1) <= 1e-4, f'{estimate.value:.12g}',
               cites=('bmoa_z',))
  return report


def bmoa_log(config, order=CARLESON_ORDER):
  report = _report('c11_bmoa_log', config, order=order, depth=config.depth)
  bounded = report.add_verdict('z', norms.carleson_seminorm(
    TaylorSeries.monomial(1), config.depth, log_weight=True))
  report.check('acceptance.bmoa_log_bounded', bounded.converged,
               f'{bounded.status}', cites=('z',))

  growing = report.add_verdict('neg_log', norms.carleson_seminorm(
    realize(FunctionSpec.neg_log(), order), config.depth, log_weight=True))
  maxima = np.asarray(growing.samples)
  rows = [{labels.DEPTH: level, 'z': bounded.samples[level],
           'neg_log': maxima[level]} for level in range(config.depth + 1)]
  report.add_table('carleson_log', util.records_frame(
    rows, [labels.DEPTH, 'z', 'neg_log']))
  report.check('acceptance.bmoa_log_increasing',
               bool(np.all(np.diff(maxima[1:]) > 0)) and growing.diverging,
               f'{growing.status}, maxima {maxima.tolist()}',
               cites=('neg_log',))
  return report


CRITERIA = {
  'c01_cesaro_identity': cesaro_identity,
  'c02_ibp_identity': ibp_identity,
  'c03_parseval_bridge': parseval_bridge,
  'c04_lp_sandwich': lp_sandwich,
  'c05_monomial_decay': monomial_decay,
  'c06_outer_witness': outer_witness,
  'c07_pole_witness': pole_witness,
  'c08_cyclicity': cyclicity,
  'c09_multiplier_bounded': multiplier_bounded,
  'c09_multiplier_unbounded': multiplier_unbounded,
  'c10_blaschke_case': blaschke_case,
  'c11_bmoa_closed_form': bmoa_closed_form,
  'c11_bmoa_log': bmoa_log,
}


@dataclasses.dataclass
class SuiteResult:
  reports: dict
  manifest: dict

  @property
  def passed(self):
    return all(r.passed for r in self.reports.values())

  @property
  def failed(self):
    return [name for name, r in self.reports.items() if not r.passed]


def _digest(path):
  with open(path, 'rb') as f:
    return hashlib.sha256(f.read()).hexdigest()


def _read_manifest(directory):
  path = os.path.join(directory, MANIFEST)
  if not os.path.exists(path):
    return None
  with open(path) as f:
    return json.load(f)


def worker_count(config):
  """Pool size: the run's `threads`, capped by `Config.MAX_THREADS`."""
  return max(1, min(config.threads, Config.MAX_THREADS))


def paper_acceptance(config=None, out=None, plot=False, criteria=None):
  """Run the acceptance criteria and, with `out`, write every report.

  Args:
    config (RunConfig): run parameters; `threads` sets the pool size,
      up to `Config.MAX_THREADS`.
    out (str): output directory; each criterion writes to its own
      subdirectory and a manifest of SHA-256 digests is kept beside them.
    plot (bool): also write plots of the tables.
    criteria (list): subset of `CRITERIA` names. Default: all.

  Returns:
    SuiteResult
  """
  config = config if config is not None else RunConfig()
  names = list(criteria or CRITERIA)
  unknown = set(names) - set(CRITERIA)
  if unknown:
    raise(ValueError(f'unknown criteria {sorted(unknown)}'))

  workers = worker_count(config)
  if workers < config.threads:
    logger.warning('%d threads requested, HVLAB_THREADS allows %d',
                   config.threads, workers)
  logger.info('%s: %d criteria on %d thread(s)',
              PAPER_ACCEPTANCE, len(names), workers)
  with concurrent.futures.ThreadPoolExecutor(workers) as pool:
    results = list(pool.map(lambda name: CRITERIA[name](config), names))
  reports = dict(zip(names, results))

  manifest = {}
  if out is not None:
    previous = _read_manifest(out)
    for name, report in reports.items():
      directory = os.path.join(out, name)
      for path in report.write(directory, plot=plot):
        manifest[os.path.relpath(path, out)] = _digest(path)

    check = _report(DETERMINISM, config)
    if previous is None:
      check.notes.append('no previous run in this directory')
      identical = True
    else:
      changed = sorted(k for k in set(previous) | set(manifest)
                       if previous.get(k) != manifest.get(k))
      identical = not changed
      check.notes.append(f'changed files: {changed}')
    check.check('acceptance.determinism', identical,
                'identical' if identical else 'outputs differ')
    reports[DETERMINISM] = check
    check.write(os.path.join(out, DETERMINISM))
    util.atomic_write(os.path.join(out, MANIFEST), util.dumps(manifest) + '\n')

  for name, report in reports.items():
    logger.info('%s: %s', name, 'pass' if report.passed else 'FAIL')
  return SuiteResult(reports, manifest)
