"""Experiment reports and the expectation registry."""
import dataclasses
import logging
import os

import pandas as pd

from .. import util
from ..errors import ExpectationFailed
from ..norms import NormEstimate


logger = logging.getLogger(__name__)


# Expectation name -> rule, stored verbatim in every report that checks it.
EXPECTATIONS = {}


def register(name, rule):
  """Register the pass/fail rule text for expectation `name`."""
  if name in EXPECTATIONS and EXPECTATIONS[name] != rule:
    raise(ValueError(f'expectation `{name}` already registered'))
  EXPECTATIONS[name] = rule
  return name


@dataclasses.dataclass
class Expectation:
  name: str
  rule: str
  passed: bool
  detail: str = ''
  cites: tuple = ()

  def to_dict(self):
    return dataclasses.asdict(self)


@dataclasses.dataclass
class ExperimentReport:
  """Outcome of one experiment.

  Attributes:
    experiment (str): experiment id.
    parameters (dict): JSON-ready inputs (FunctionSpecs as dicts, p,
      orders, ...).
    verdicts (dict): name -> NormEstimate.
    tables (dict): name -> pandas.DataFrame, written as `<name>.csv`.
    expectations (list): `Expectation` records.
    seed (int): seed of any random family.
    config (dict): the RunConfig used.
  """
  experiment: str
  parameters: dict = dataclasses.field(default_factory=dict)
  verdicts: dict = dataclasses.field(default_factory=dict)
  tables: dict = dataclasses.field(default_factory=dict)
  expectations: list = dataclasses.field(default_factory=list)
  seed: int = 0
  config: dict = dataclasses.field(default_factory=dict)
  notes: list = dataclasses.field(default_factory=list)

  @property
  def passed(self):
    return all(e.passed for e in self.expectations)

  def add_verdict(self, name, estimate):
    if not isinstance(estimate, NormEstimate):
      raise(TypeError(
        f'verdict `{name}` should be NormEstimate, not '
        f'{type(estimate).__name__}'
      ))
    self.verdicts[name] = estimate
    return estimate

  def add_table(self, name, df):
    if not isinstance(df, pd.DataFrame):
      raise(TypeError(
        f'table `{name}` should be DataFrame, not {type(df).__name__}'
      ))
    self.tables[name] = df
    return df

  def check(self, name, passed, detail='', cites=()):
    """Record the outcome of registered expectation `name`.

    `cites` names the verdicts the outcome was decided from; their
    sample histories are logged when it fails.
    """
    if name not in EXPECTATIONS:
      raise(KeyError(f'unregistered expectation `{name}`'))
    expectation = Expectation(
      name, EXPECTATIONS[name], bool(passed), detail, tuple(cites))
    self.expectations.append(expectation)
    if not expectation.passed:
      logger.warning('%s: expectation `%s` failed: %s',
                     self.experiment, name, detail)
      for cite in cites:
        estimate = self.verdicts.get(cite)
        if estimate is not None:
          logger.warning('  %s: %s samples=%s', cite, estimate.status,
                         list(estimate.samples))
    return expectation.passed

  def raise_if_failed(self):
    failed = [e.name for e in self.expectations if not e.passed]
    if failed:
      raise(ExpectationFailed(
        f'{self.experiment}: failed expectations {failed}'))

  def to_dict(self):
    return {
      'experiment': self.experiment,
      'parameters': self.parameters,
      'verdicts': {k: v.to_dict() for k, v in self.verdicts.items()},
      'expectations': [e.to_dict() for e in self.expectations],
      'passed': self.passed,
      'seed': self.seed,
      'config': self.config,
      'notes': list(self.notes),
    }

  def write(self, directory, plot=False):
    """Write report.json and one CSV per table (plus plots) atomically.

    Returns:
      list: paths written.
    """
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name in sorted(self.tables):
      path = os.path.join(directory, f'{name}.csv')
      util.write_table(self.tables[name], path)
      paths.append(path)
      if plot:
        from .. import plots
        paths.append(plots.plot_table(
          self.tables[name], os.path.join(directory, f'{name}.svg'),
          title=f'{self.experiment}: {name}'))
    path = os.path.join(directory, 'report.json')
    util.atomic_write(path, util.dumps(self.to_dict()) + '\n')
    paths.append(path)
    logger.info('%s: wrote %d file(s) to %s',
                self.experiment, len(paths), directory)
    return paths
