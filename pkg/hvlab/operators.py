"""Coefficient-exact operators on truncated series.

  volterra(g, f)   T_g f = int_0^z f g'
  companion(g, f)  S_g f = int_0^z f' g
  multiply(g, f)   M_g f = g f
  cesaro(f)        [C f]_n = (a_0 + ... + a_n) / (n + 1)

Products are formed to full degree and then capped; the report records
how many computed coefficients the cap discarded and how far the result
is exact given the input truncations.
"""
import dataclasses
import logging

import numpy as np

from . import series
from .series import TaylorSeries


logger = logging.getLogger(__name__)


# Operator names, as accepted by `apply`.
TG = 'Tg'
SG = 'Sg'
MG = 'Mg'
CESARO = 'cesaro'
OPERATORS = (TG, SG, MG, CESARO)


@dataclasses.dataclass
class OperatorReport:
  """Bookkeeping for one operator application.

  Attributes:
    operator (str): one of `OPERATORS`.
    input_orders (tuple): truncation orders of the inputs.
    output_order (int): order of the returned series.
    valid_order (int): last degree whose coefficient is exact given the
      input truncations.
    discarded (int): computed coefficients dropped by the cap.
    residuals (dict): identity residuals, name -> value (finite, >= 0).
    flags (list): free-form warnings.
  """
  operator: str
  input_orders: tuple
  output_order: int
  valid_order: int
  discarded: int = 0
  residuals: dict = dataclasses.field(default_factory=dict)
  flags: list = dataclasses.field(default_factory=list)

  def to_dict(self):
    return dataclasses.asdict(self)


def _capped_product(f, g, cap):
  full = f.order + g.order
  order = full if cap is None else min(full, cap)
  return series.cauchy_product(f, g, order), full - order


def volterra(g, f, cap=None, report=False):
  """T_g f = antiderivative(f * g').

  [T_g f]_{n+1} = (1 / (n + 1)) sum_{j<=n} a_j (n - j + 1) b_{n-j+1}.

  Args:
    g (TaylorSeries): symbol.
    f (TaylorSeries): argument.
    cap (int): optional order cap for the product f * g'.
    report (bool): also return an `OperatorReport`.
  """
  product, discarded = _capped_product(f, series.differentiate(g), cap)
  out = series.antiderivative(product)
  if not report:
    return out
  return out, OperatorReport(
    TG, (g.order, f.order), out.order,
    valid_order=min(f.order, g.order - 1) + 1 if g.order else out.order,
    discarded=discarded,
  )


def companion(g, f, cap=None, report=False):
  """S_g f = antiderivative(f' * g)."""
  product, discarded = _capped_product(series.differentiate(f), g, cap)
  out = series.antiderivative(product)
  if not report:
    return out
  return out, OperatorReport(
    SG, (g.order, f.order), out.order,
    valid_order=min(f.order - 1, g.order) + 1 if f.order else out.order,
    discarded=discarded,
  )


def multiply(g, f, cap=None, report=False):
  """M_g f = g f."""
  out, discarded = _capped_product(g, f, cap)
  if not report:
    return out
  return out, OperatorReport(
    MG, (g.order, f.order), out.order,
    valid_order=min(f.order, g.order, out.order), discarded=discarded,
  )


def ibp_defect(g, f):
  """Max coefficient modulus of T_g f + S_g f + g(0) f(0) - g f.

  Compared through the common valid degree min(f.order, g.order) and
  scaled by max(1, largest coefficient modulus of the three terms).
  """
  d = min(f.order, g.order)
  g, f = g.truncate(d), f.truncate(d)
  t = volterra(g, f).truncate(d)
  s = companion(g, f).truncate(d)
  m = multiply(g, f).truncate(d)
  g0f0 = g.coeffs[0] * f.coeffs[0]
  defect = t.coeffs + s.coeffs - m.coeffs
  defect[0] += g0f0
  scale = max(1.0, *(float(np.max(np.abs(x.coeffs))) for x in (t, s, m)))
  return float(np.max(np.abs(defect))) / scale


def cesaro(f):
  """[C f]_n = (1 / (n + 1)) sum_{k<=n} a_k."""
  n = np.arange(1, f.order + 2)
  return TaylorSeries(np.cumsum(f.coeffs) / n)


def companion_on_monomial(f, n):
  """F_n = z^-n S_f(z^n), with coefficients a_k n / (n + k)."""
  if n < 1:
    raise(ValueError(f'n must be >= 1, got {n}'))
  k = np.arange(f.order + 1)
  return TaylorSeries(f.coeffs * (n / (n + k)))


def apply(name, g, f, cap=None):
  """Apply the operator `name` and return (series, OperatorReport).

  The report for T_g, S_g and M_g carries the integration-by-parts
  defect of the pair; the Cesaro report carries the defect of
  z C(f) = T_{-log(1-z)} f.
  """
  if name == TG:
    out, rep = volterra(g, f, cap, report=True)
  elif name == SG:
    out, rep = companion(g, f, cap, report=True)
  elif name == MG:
    out, rep = multiply(g, f, cap, report=True)
  elif name == CESARO:
    out = cesaro(f)
    rep = OperatorReport(CESARO, (f.order,), out.order, out.order)
    shifted = series.shift(out, 1)
    neg_log = TaylorSeries(
      np.concatenate([[0.0], 1 / np.arange(1, f.order + 2)]))
    via_volterra = volterra(neg_log, f).truncate(shifted.order)
    rep.residuals['cesaro_identity'] = float(
      np.max(np.abs(shifted.coeffs - via_volterra.coeffs)))
    return out, rep
  else:
    raise(ValueError(f'unknown operator `{name}`; expected one of {OPERATORS}'))

  rep.residuals['ibp_defect'] = ibp_defect(g, f)
  if rep.discarded:
    logger.info('%s: cap discarded %d trailing coefficients',
                name, rep.discarded)
  return out, rep
