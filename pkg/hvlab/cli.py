"""Command-line front end.

  hvlab realize --f SPEC
  hvlab apply-op --op {Tg,Sg,Mg,cesaro} --g SPEC --f SPEC
  hvlab norm --space SPACE --f SPEC [--g SPEC] [--r R]
  hvlab experiment NAME [experiment flags]
  hvlab suite paper-acceptance

Function specs are JSON (`{"kind":"monomial","n":5}`), a bare kind
(`neg_log`) or a catalog name (`inv_quarter_power`).

Exit codes: 0 success, 1 expectation failure, 2 usage error,
3 numerical-validity failure.
"""
import argparse
import logging
import os
import sys

import pandas as pd

from . import catalog, norms, operators, util
from .config import Config, RunConfig
from .errors import (
  ExpectationFailed, HvlabError, IllConditioned, NumericalValidityError,
  RadiusOutOfRange)
from .lab import experiments, suite


logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID = 3


class UsageError(HvlabError):
  """A subcommand was given an incomplete or contradictory set of flags."""


def _function(text, order):
  spec = experiments.as_spec(text)
  return catalog.realize(spec, order)


def _require(args, *names):
  missing = [f'--{name.replace("_", "-")}' for name in names
             if getattr(args, name) is None]
  if missing:
    raise(UsageError(f'{args.command} needs {", ".join(missing)}'))


def _coefficient_frame(f):
  return pd.DataFrame({
    'index': range(f.order + 1),
    'real': f.coeffs.real,
    'imag': f.coeffs.imag,
  })


def _emit_table(df, args, name):
  """Print the table, or write it under --out when that was given."""
  if args.out is None:
    sys.stdout.write(util.table_to_csv(df))
    return None
  os.makedirs(args.out, exist_ok=True)
  path = os.path.join(args.out, f'{name}.csv')
  util.write_table(df, path)
  logger.info('wrote %s', path)
  return path


# --- Subcommands ---

def realize(args, config):
  _require(args, 'f')
  f = _function(args.f, config.order)
  _emit_table(_coefficient_frame(f), args, 'realize')
  return EXIT_OK


def apply_op(args, config):
  _require(args, 'op', 'f')
  if args.op != operators.CESARO:
    _require(args, 'g')
  g = _function(args.g, config.order) if args.g is not None else None
  f = _function(args.f, config.order)
  out, report = operators.apply(args.op, g, f)
  for name, value in report.residuals.items():
    logger.info('%s residual %s = %.3e', args.op, name, value)
  path = _emit_table(_coefficient_frame(out), args, 'apply-op')
  if path is not None:
    util.atomic_write(os.path.join(args.out, 'apply-op.json'),
                      util.dumps(report.to_dict()) + '\n')
  return EXIT_OK


def norm(args, config):
  _require(args, 'space', 'f')
  f = _function(args.f, config.order)
  g = _function(args.g, config.order) if args.g is not None else None
  space = norms.SpaceSpec.parse(args.space, g)

  if args.r is not None:
    if space.space != norms.HP:
      raise(UsageError('--r applies to Hardy spaces only'))
    print(repr(norms.certified_mean(f, args.r, space.p)))
    return EXIT_OK

  ladder = experiments.run_ladder(config)
  estimate = norms.estimate(space, f, ladder, config.depth)
  if args.json:
    print(util.dumps(estimate.to_dict()))
  else:
    print(repr(estimate.value))
  if estimate.status != norms.CONVERGED:
    logger.warning('%s estimate is %s', space.space, estimate.status)
  return EXIT_OK


def _n_list(args, default):
  return util.parse_int_list(args.n) if args.n is not None else default


def _experiment_kwargs(name, args):
  """Keyword arguments for experiment `name` from the parsed flags."""
  p = args.p if args.p is not None else 2
  if name == experiments.MONOMIAL_DECAY:
    _require(args, 'g')
    kwargs = dict(g=args.g, p=p)
    if args.n is not None:
      kwargs['n_list'] = util.parse_int_list(args.n)
    return kwargs
  if name == experiments.WITNESS:
    _require(args, 'g', 'f')
    return dict(g=args.g, p=p, f=args.f, companion=args.companion,
                a=args.a if args.a is not None else -1.0, member=args.member)
  if name == experiments.INTERSECTION:
    _require(args, 'f')
    return dict(f=args.f, p=p,
                n_list=_n_list(args, (1, 2, 4, 8, 16, 32, 64, 128, 256)))
  if name == experiments.MULTIPLIER:
    _require(args, 'g', 'h')
    return dict(g=args.g, h=args.h, p=p)
  if name == experiments.CYCLICITY:
    kwargs = dict(symbol=args.symbol or 'singular_inner')
    if args.degrees is not None:
      kwargs['degrees'] = util.parse_int_list(args.degrees)
    return kwargs
  if name == experiments.ALEMAN_CIMA:
    _require(args, 'g', 'p1', 'p2')
    return dict(g=args.g, p1=args.p1, p2=args.p2,
                n_list=_n_list(args, (1, 2, 4, 8, 16, 32, 64)))
  if name == experiments.BLASCHKE_CASE:
    zeros = util.parse_float_list(args.b) if args.b is not None else (0.0,)
    return dict(b_params=tuple(zeros),
                p1=args.p1 if args.p1 is not None else 1,
                p2=args.p2 if args.p2 is not None else 2, g=args.g)
  if name == experiments.KORENBLUM_MULTIPLIER:
    _require(args, 'g', 'gamma', 'delta')
    return dict(g=args.g, gamma=args.gamma, delta=args.delta)
  if name == experiments.GROWTH_PAIR:
    _require(args, 'f1', 'f2', 'alpha')
    return dict(f1=args.f1, f2=args.f2, alpha=args.alpha,
                expect_pair=args.expect)
  if name == experiments.POINT_EVALUATION:
    _require(args, 'g', 'f')
    return dict(g=args.g, f=args.f, p=p)
  if name == experiments.CONFORMAL_INVARIANCE:
    return dict(g=args.g, p=p)
  if name == experiments.COMPANION_RATIO:
    _require(args, 'f')
    return dict(f=args.f, p=p, n_list=_n_list(args, (1, 2, 4, 8)))
  if name == experiments.POLYNOMIAL_DENSITY:
    kwargs = dict(g=args.g or 'exp_z',
                  target=args.target or 'inv_half_power')
    if args.degrees is not None:
      kwargs['degrees'] = util.parse_int_list(args.degrees)
    return kwargs
  raise(UsageError(f'unknown experiment `{name}`'))


def experiment(args, config):
  kwargs = _experiment_kwargs(args.name, args)
  report = experiments.EXPERIMENTS[args.name](config=config, **kwargs)
  report.write(os.path.join(config.out, args.name), plot=args.plot)
  for e in report.expectations:
    print(f'{"pass" if e.passed else "FAIL"}  {e.name}  {e.detail}')
  if config.strict:
    report.raise_if_failed()
  return EXIT_OK if report.passed else EXIT_FAILED


def run_suite(args, config):
  result = suite.paper_acceptance(config, out=config.out, plot=args.plot)
  for name, report in result.reports.items():
    print(f'{"pass" if report.passed else "FAIL"}  {name}')
  if result.failed and config.strict:
    raise(ExpectationFailed(f'failed criteria {result.failed}'))
  return EXIT_OK if result.passed else EXIT_FAILED


# --- Parser ---

def _add_run_flags(parser):
  group = parser.add_argument_group('run configuration')
  group.add_argument('--config', help='run config JSON file')
  group.add_argument('--out', help='output directory')
  group.add_argument('--order', type=int, help='truncation order N')
  group.add_argument('--ladder', type=int, help='radius ladder depth J')
  group.add_argument('--depth', type=int, help='dyadic depth L')
  group.add_argument('--tol', type=float, help='convergence tolerance')
  group.add_argument('--identity-tol', type=float,
                     help='threshold for exact identity residuals')
  group.add_argument('--angles', type=int,
                     help='grid points per radius, a power of two')
  group.add_argument('--seed', type=int)
  group.add_argument('--threads', type=int)
  group.add_argument('--strict', action='store_true', default=None,
                     help='raise on the first failed expectation')
  group.add_argument('--plot', action='store_true',
                     help='also write plots of the tables')
  group.add_argument('-v', '--verbose', action='count', default=0)


def build_parser():
  parser = argparse.ArgumentParser(
    prog='hvlab',
    description='Numerical laboratory for the Volterra operator T_g.')
  commands = parser.add_subparsers(dest='command', required=True)

  sub = commands.add_parser('realize', help='print Taylor coefficients')
  sub.add_argument('--f')
  sub.set_defaults(func=realize)

  sub = commands.add_parser('apply-op', help='apply an operator')
  sub.add_argument('--op', choices=operators.OPERATORS)
  sub.add_argument('--g')
  sub.add_argument('--f')
  sub.set_defaults(func=apply_op)

  sub = commands.add_parser('norm', help='estimate a norm')
  sub.add_argument('--space', help='H<p>, Hinf, BMOA, BMOAlog, Carleson, '
                   'Bloch, K<alpha>, Lip<alpha>, A21, Bergman, Domain<p>')
  sub.add_argument('--f')
  sub.add_argument('--g', help='symbol for Bergman and Domain<p>')
  sub.add_argument('--r', type=float, help='single radius (Hardy only)')
  sub.add_argument('--json', action='store_true',
                   help='print the full estimate as JSON')
  sub.set_defaults(func=norm)

  sub = commands.add_parser('experiment', help='run one experiment')
  sub.add_argument('name', choices=sorted(experiments.EXPERIMENTS))
  for flag in ('g', 'f', 'h', 'f1', 'f2', 'symbol', 'target', 'n',
               'degrees', 'b'):
    sub.add_argument(f'--{flag}')
  for flag in ('p', 'p1', 'p2', 'gamma', 'delta', 'alpha', 'a'):
    sub.add_argument(f'--{flag}', type=float)
  sub.add_argument('--companion', choices=(
    experiments.OUTER_COMPANION, experiments.POLE_COMPANION))
  sub.add_argument('--member', action='store_true')
  sub.add_argument('--expect', action='store_true',
                   help='growth-pair: expect the two-sided bound to hold')
  sub.set_defaults(func=experiment)

  sub = commands.add_parser('suite', help='run an acceptance suite')
  sub.add_argument('name', choices=(suite.PAPER_ACCEPTANCE,))
  sub.set_defaults(func=run_suite)

  for sub in commands.choices.values():
    _add_run_flags(sub)
  return parser


def _log_level(verbose):
  if verbose >= 2:
    return logging.DEBUG
  if verbose == 1:
    return logging.INFO
  return Config.LOG_LEVEL.upper()


def run_config(args):
  config = RunConfig.from_json(args.config) if args.config else RunConfig()
  return config.replace(
    order=args.order, ladder=args.ladder, depth=args.depth,
    conv_tol=args.tol, identity_tol=args.identity_tol, angles=args.angles,
    seed=args.seed, threads=args.threads, out=args.out, strict=args.strict)


def main(argv=None):
  parser = build_parser()
  args = parser.parse_args(argv)
  logging.basicConfig(
    level=_log_level(args.verbose), stream=sys.stderr,
    format='%(levelname)s %(name)s: %(message)s')

  try:
    config = run_config(args)
    return args.func(args, config)
  except ExpectationFailed as e:
    print(f'hvlab: {e}', file=sys.stderr)
    return EXIT_FAILED
  except (NumericalValidityError, RadiusOutOfRange, IllConditioned) as e:
    print(f'hvlab: {e}', file=sys.stderr)
    return EXIT_INVALID
  except HvlabError as e:
    print(f'hvlab: {e}', file=sys.stderr)
    return EXIT_USAGE
