"""Function recipes and their realization as Taylor series.

A `FunctionSpec` names one of the explicit functions the lab works with
(monomials, logs, binomial powers, the singular inner function, Blaschke
factors, ...) or a combination of them. Recipes round-trip through a
small JSON grammar so that experiments can be reproduced from a config
file:

  {"kind": "power", "base": {"kind": "binomial_power", "alpha": -1.25},
   "alpha": 1.0}

Complex parameters are written as a number or as a `[re, im]` pair.
"""
import dataclasses
import functools
import json
import logging
import math

import numpy as np
from scipy import special

from . import series
from .config import Config
from .errors import InvalidSpec, OrderOverflow
from .series import TailHint, TaylorSeries
from .util import encode_complex


logger = logging.getLogger(__name__)


# Keep these names straight, in one place.
MONOMIAL = 'monomial'
NEG_LOG = 'neg_log'
BINOMIAL_POWER = 'binomial_power'
SHIFTED_BINOMIAL_POWER = 'shifted_binomial_power'
SINGULAR_INNER = 'singular_inner'
BLASCHKE_FACTOR = 'blaschke_factor'
OUTER_THREE_MINUS_LOG = 'outer_three_minus_log'
PRODUCT = 'product'
POWER = 'power'
RECIPROCAL = 'reciprocal'
EXP = 'exp'
LINEAR_COMBO = 'linear_combo'
INTEGRAL = 'integral'

KINDS = (
  MONOMIAL, NEG_LOG, BINOMIAL_POWER, SHIFTED_BINOMIAL_POWER, SINGULAR_INNER,
  BLASCHKE_FACTOR, OUTER_THREE_MINUS_LOG, PRODUCT, POWER, RECIPROCAL, EXP,
  LINEAR_COMBO, INTEGRAL,
)

ALIASES = {
  'neg_log_one_minus_z': NEG_LOG,
  'outer': OUTER_THREE_MINUS_LOG,
  'psi': OUTER_THREE_MINUS_LOG,
}

# Sample circles for the principal-branch check on powers.
_BRANCH_RADII = (0.3, 0.6, 0.9)
_BRANCH_ANGLES = 256

# |a| within this of 1 counts as a point of the unit circle.
UNIT_CIRCLE_TOL = 1e-12


@dataclasses.dataclass(frozen=True)
class FunctionSpec:
  """Recipe for a function analytic on the open unit disk.

  Only the fields relevant to `kind` are set; the classmethod
  constructors below are the intended way to build one.
  """
  kind: str
  n: int = None
  alpha: complex = None
  a: complex = None
  base: 'FunctionSpec' = None
  factors: tuple = ()
  terms: tuple = ()

  def __post_init__(self):
    if self.kind not in KINDS:
      raise(InvalidSpec(
        f'unknown function kind `{self.kind}`; expected one of {KINDS}'
      ))

    if self.kind == MONOMIAL:
      if isinstance(self.n, bool) or not isinstance(self.n, int) \
          or self.n < 0:
        raise(InvalidSpec(f'monomial degree must be an int >= 0, got {self.n!r}'))

    if self.kind in (BINOMIAL_POWER, SHIFTED_BINOMIAL_POWER, POWER):
      if self.alpha is None:
        raise(InvalidSpec(f'`{self.kind}` needs `alpha`'))

    if self.kind == SHIFTED_BINOMIAL_POWER:
      if self.a is None or abs(self.a) < 1 - UNIT_CIRCLE_TOL:
        raise(InvalidSpec(
          f'shifted_binomial_power needs |a| >= 1 to be analytic on the '
          f'disk, got a = {self.a!r}'
        ))

    if self.kind == BLASCHKE_FACTOR:
      if self.a is None or abs(self.a) >= 1:
        raise(InvalidSpec(f'blaschke_factor needs |a| < 1, got a = {self.a!r}'))

    if self.kind in (POWER, RECIPROCAL, EXP, INTEGRAL):
      if not isinstance(self.base, FunctionSpec):
        raise(InvalidSpec(f'`{self.kind}` needs a `base` FunctionSpec'))

    if self.kind == PRODUCT:
      if not self.factors or \
          not all(isinstance(f, FunctionSpec) for f in self.factors):
        raise(InvalidSpec('`product` needs a nonempty list of factors'))

    if self.kind == LINEAR_COMBO:
      if not self.terms or \
          not all(isinstance(s, FunctionSpec) for _, s in self.terms):
        raise(InvalidSpec('`linear_combo` needs a nonempty list of terms'))

  # --- Constructors ---

  @classmethod
  def monomial(cls, n):
    return cls(MONOMIAL, n=n)

  @classmethod
  def constant(cls, c):
    return cls.linear_combo([(c, cls.monomial(0))])

  @classmethod
  def neg_log(cls):
    """-log(1 - z)."""
    return cls(NEG_LOG)

  @classmethod
  def binomial_power(cls, alpha):
    """(1 - z)**alpha."""
    return cls(BINOMIAL_POWER, alpha=alpha)

  @classmethod
  def shifted_binomial_power(cls, alpha, a):
    """(1 - z/a)**alpha, the (a - z)**alpha factor normalized to 1 at 0."""
    return cls(SHIFTED_BINOMIAL_POWER, alpha=alpha, a=a)

  @classmethod
  def singular_inner(cls):
    """exp((z + 1) / (z - 1))."""
    return cls(SINGULAR_INNER)

  @classmethod
  def blaschke_factor(cls, a):
    """(a - z) / (1 - conj(a) z)."""
    return cls(BLASCHKE_FACTOR, a=a)

  @classmethod
  def outer_three_minus_log(cls):
    """1 / (3 - log(1 - z))."""
    return cls(OUTER_THREE_MINUS_LOG)

  @classmethod
  def product(cls, factors):
    return cls(PRODUCT, factors=tuple(factors))

  @classmethod
  def power(cls, base, alpha):
    return cls(POWER, base=base, alpha=alpha)

  @classmethod
  def reciprocal(cls, base):
    return cls(RECIPROCAL, base=base)

  @classmethod
  def exp(cls, base):
    return cls(EXP, base=base)

  @classmethod
  def linear_combo(cls, terms):
    return cls(LINEAR_COMBO, terms=tuple((c, s) for c, s in terms))

  @classmethod
  def integral(cls, base):
    """Primitive of `base` vanishing at 0."""
    return cls(INTEGRAL, base=base)

  # --- JSON ---

  def to_dict(self):
    d = {'kind': self.kind}
    if self.kind == MONOMIAL:
      d['n'] = self.n
    if self.alpha is not None:
      d['alpha'] = encode_complex(self.alpha)
    if self.a is not None:
      d['a'] = encode_complex(self.a)
    if self.base is not None:
      d['base'] = self.base.to_dict()
    if self.factors:
      d['factors'] = [f.to_dict() for f in self.factors]
    if self.terms:
      d['terms'] = [
        {'coef': encode_complex(c), 'spec': s.to_dict()}
        for c, s in self.terms
      ]
    return d

  def to_json(self):
    return json.dumps(self.to_dict(), sort_keys=True)

  @classmethod
  def from_dict(cls, d):
    if not isinstance(d, dict):
      raise(InvalidSpec(
        f'a function spec must be a JSON object, not {type(d).__name__}'
      ))
    if 'kind' not in d:
      raise(InvalidSpec(f'function spec {d!r} has no `kind`'))

    kind = ALIASES.get(d['kind'], d['kind'])
    known = {'kind', 'n', 'alpha', 'a', 'base', 'factors', 'terms'}
    unknown = set(d) - known
    if unknown:
      raise(InvalidSpec(f'unknown keys {sorted(unknown)} in `{kind}` spec'))

    try:
      return cls(
        kind,
        n=d.get('n'),
        alpha=_decode_complex(d.get('alpha')),
        a=_decode_complex(d.get('a')),
        base=cls.from_dict(d['base']) if 'base' in d else None,
        factors=tuple(cls.from_dict(f) for f in d.get('factors', ())),
        terms=tuple(
          (_decode_complex(t['coef']), cls.from_dict(t['spec']))
          for t in d.get('terms', ())
        ),
      )
    except (KeyError, TypeError) as e:
      raise(InvalidSpec(f'malformed `{kind}` spec: {e}'))

  @classmethod
  def parse(cls, text):
    """Parse JSON text, or a bare kind name such as `neg_log`."""
    text = text.strip()
    if not text.startswith('{'):
      return cls.from_dict({'kind': text})
    try:
      d = json.loads(text)
    except json.JSONDecodeError as e:
      raise(InvalidSpec(f'function spec is not valid JSON: {e}'))
    return cls.from_dict(d)

  def describe(self):
    """Short human-readable formula."""
    if self.kind == MONOMIAL:
      return f'z^{self.n}'
    if self.kind == NEG_LOG:
      return '-log(1-z)'
    if self.kind == BINOMIAL_POWER:
      return f'(1-z)^{_fmt(self.alpha)}'
    if self.kind == SHIFTED_BINOMIAL_POWER:
      return f'(1-z/{_fmt(self.a)})^{_fmt(self.alpha)}'
    if self.kind == SINGULAR_INNER:
      return 'exp((z+1)/(z-1))'
    if self.kind == BLASCHKE_FACTOR:
      return f'B[{_fmt(self.a)}]'
    if self.kind == OUTER_THREE_MINUS_LOG:
      return '1/(3-log(1-z))'
    if self.kind == PRODUCT:
      return '*'.join(f'({f.describe()})' for f in self.factors)
    if self.kind == POWER:
      return f'({self.base.describe()})^{_fmt(self.alpha)}'
    if self.kind == RECIPROCAL:
      return f'1/({self.base.describe()})'
    if self.kind == EXP:
      return f'exp({self.base.describe()})'
    if self.kind == INTEGRAL:
      return f'int({self.base.describe()})'
    return ' + '.join(f'{_fmt(c)}*({s.describe()})' for c, s in self.terms)


def _fmt(x):
  x = complex(x)
  if x.imag == 0:
    return f'{x.real:g}'
  return f'({x.real:g}{x.imag:+g}i)'


def _decode_complex(x):
  if x is None:
    return None
  if isinstance(x, (list, tuple)):
    if len(x) != 2:
      raise(InvalidSpec(f'complex values are [re, im] pairs, got {x!r}'))
    return complex(x[0], x[1])
  if isinstance(x, bool) or not isinstance(x, (int, float, complex)):
    raise(InvalidSpec(f'expected a number, got {x!r}'))
  return x


# --- Realization ---

def realize(spec, order):
  """Degree-`order` truncation of the function `spec` names.

  Coefficients come from recurrences or coefficient convolutions, never
  from sampling.

  Raises:
    InvalidSpec: reciprocal/power of a series with vanishing constant
      term, or a power whose base leaves the principal domain.
    OrderOverflow: `order` above `Config.MAX_ORDER`.
  """
  if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
    raise(TypeError(f'order should be int, not {type(order).__name__}'))
  if order < 0:
    raise(InvalidSpec(f'order must be >= 0, got {order}'))
  if order > Config.MAX_ORDER:
    raise(OrderOverflow(
      f'order {order} exceeds the maximum {Config.MAX_ORDER}'
    ))
  return _BUILDERS[spec.kind](spec, int(order))


def _monomial(spec, order):
  if spec.n > order:
    return TaylorSeries(np.zeros(order + 1), TailHint.polynomial(1.0, 0.0))
  return TaylorSeries.monomial(spec.n, order)


def _neg_log(spec, order):
  coeffs = np.zeros(order + 1)
  k = np.arange(1, order + 1)
  coeffs[1:] = 1 / k
  return TaylorSeries(coeffs, TailHint.polynomial(1.0, -1.0))


def _binomial_coeffs(alpha, order, a=1):
  # a_{k+1} = a_k (k - alpha) / ((k + 1) a)
  k = np.arange(order)
  ratios = (k - alpha) / ((k + 1) * a)
  return np.concatenate([[1.0 + 0j], np.cumprod(ratios)])


def _binomial_hint(alpha, coeffs):
  if complex(alpha).imag == 0 and float(np.real(alpha)).is_integer() \
      and np.real(alpha) >= 0:
    if len(coeffs) > np.real(alpha):
      return TailHint.exact()
    return None

  # |a_k| k**(1 + Re alpha) tends to 1/|Gamma(-alpha)|, so the larger of
  # the limit and the stored maximum bounds the tail.
  m = -np.real(alpha) - 1
  k = np.maximum(np.arange(len(coeffs)), 1)
  stored = np.max(np.abs(coeffs) / k ** m)
  limit = 1 / abs(special.gamma(-complex(alpha)))
  return TailHint.polynomial(max(stored, limit), m)


def _binomial_power(spec, order):
  coeffs = _binomial_coeffs(spec.alpha, order)
  return TaylorSeries(coeffs, _binomial_hint(spec.alpha, coeffs))


def _shifted_binomial_power(spec, order):
  coeffs = _binomial_coeffs(spec.alpha, order, spec.a)
  hint = _binomial_hint(spec.alpha, coeffs) \
    if abs(abs(spec.a) - 1) <= UNIT_CIRCLE_TOL else None
  return TaylorSeries(coeffs, hint)


def _singular_inner(spec, order):
  # (z - 1)^2 S' = -2 S  gives  s_{n+1} = (n - 1)(2 s_n - s_{n-1}) / (n + 1).
  s = np.zeros(order + 1)
  s[0] = math.exp(-1)
  if order >= 1:
    s[1] = -2 * s[0]
  for n in range(1, order):
    s[n + 1] = (n - 1) * (2 * s[n] - s[n - 1]) / (n + 1)
  return TaylorSeries(s)


def _blaschke_factor(spec, order):
  a = complex(spec.a)
  if a == 0:
    return TaylorSeries.monomial(1, order, coef=-1.0) if order >= 1 \
      else TaylorSeries([0.0], TailHint.polynomial(1.0, 0.0))

  coeffs = np.zeros(order + 1, dtype=complex)
  coeffs[0] = a
  k = np.arange(1, order + 1)
  coeffs[1:] = np.conj(a) ** (k - 1) * (abs(a) ** 2 - 1)
  scale = max(abs(a), (1 - abs(a) ** 2) / abs(a))
  return TaylorSeries(coeffs, TailHint.geometric(scale, 1 / abs(a)))


def _outer_three_minus_log(spec, order):
  denominator = series.linear_combine([
    (3, TaylorSeries.unit()),
    (1, _neg_log(spec, order)),
  ])
  return series.reciprocal(denominator)


def _product(spec, order):
  factors = [realize(f, order) for f in spec.factors]
  return functools.reduce(
    lambda f, g: series.cauchy_product(f, g, order), factors)


def _power(spec, order):
  base = realize(spec.base, order)
  _check_principal(base, spec.base)
  return series.series_pow(base, spec.alpha)


def _reciprocal(spec, order):
  return series.reciprocal(realize(spec.base, order))


def _exp(spec, order):
  return series.series_exp(realize(spec.base, order))


def _linear_combo(spec, order):
  return series.linear_combine(
    [(c, realize(s, order)) for c, s in spec.terms]).truncate(order)


def _integral(spec, order):
  if order == 0:
    return TaylorSeries.constant(0.0)
  return series.antiderivative(realize(spec.base, order - 1))


def _check_principal(f, spec):
  """Reject bases that vanish or cross the negative real axis.

  The principal power is analytic only where the base avoids the cut;
  sampled on a few circles, a cut crossing shows up as a phase jump.
  """
  if f.coeffs[0] == 0:
    raise(InvalidSpec(
      f'power base {spec.describe()} vanishes at 0'
    ))
  theta = 2 * np.pi * np.arange(_BRANCH_ANGLES) / _BRANCH_ANGLES
  for r in _BRANCH_RADII:
    values = series.evaluate_many(f, r * np.exp(1j * theta))
    if np.any(values == 0):
      raise(InvalidSpec(f'power base {spec.describe()} vanishes in the disk'))
    phase = np.angle(values)
    jumps = np.abs(np.diff(np.append(phase, phase[0])))
    if jumps.max() > np.pi:
      raise(InvalidSpec(
        f'power base {spec.describe()} crosses the principal branch cut '
        f'on |z| = {r}'
      ))


_BUILDERS = {
  MONOMIAL: _monomial,
  NEG_LOG: _neg_log,
  BINOMIAL_POWER: _binomial_power,
  SHIFTED_BINOMIAL_POWER: _shifted_binomial_power,
  SINGULAR_INNER: _singular_inner,
  BLASCHKE_FACTOR: _blaschke_factor,
  OUTER_THREE_MINUS_LOG: _outer_three_minus_log,
  PRODUCT: _product,
  POWER: _power,
  RECIPROCAL: _reciprocal,
  EXP: _exp,
  LINEAR_COMBO: _linear_combo,
  INTEGRAL: _integral,
}


# --- Named catalog ---

def log_e_over_one_minus_z():
  """1 - log(1 - z) = log(e / (1 - z)), zero-free with positive real part."""
  return FunctionSpec.linear_combo([
    (1, FunctionSpec.monomial(0)),
    (1, FunctionSpec.neg_log()),
  ])


def log_power_witness(p=2):
  """(1 - z)**(-1/p) * log(e / (1 - z))**(1 - 1/(2p)).

  Lies in the optimal domain of T_z on H^p but not in H^p.
  """
  return FunctionSpec.product([
    FunctionSpec.binomial_power(-1 / p),
    FunctionSpec.power(log_e_over_one_minus_z(), 1 - 1 / (2 * p)),
  ])


CATALOG = {
  'monomial_5': FunctionSpec.monomial(5),
  'neg_log': FunctionSpec.neg_log(),
  'sqrt_one_minus_z': FunctionSpec.binomial_power(0.5),
  'inv_quarter_power': FunctionSpec.binomial_power(-0.25),
  'inv_half_power': FunctionSpec.binomial_power(-0.5),
  'inv_five_quarter_power': FunctionSpec.binomial_power(-1.25),
  'shifted_inv_half_power': FunctionSpec.shifted_binomial_power(-0.5, -2.0),
  'singular_inner': FunctionSpec.singular_inner(),
  'blaschke_half': FunctionSpec.blaschke_factor(0.5),
  'blaschke_complex': FunctionSpec.blaschke_factor(0.3 + 0.4j),
  'psi': FunctionSpec.outer_three_minus_log(),
  'mean_one_plus_z': FunctionSpec.linear_combo([
    (0.5, FunctionSpec.monomial(0)),
    (0.5, FunctionSpec.monomial(1)),
  ]),
  'exp_z': FunctionSpec.exp(FunctionSpec.monomial(1)),
  'log_e_over_one_minus_z': log_e_over_one_minus_z(),
}

# (g, f) pairs for the integration-by-parts regression.
REGRESSION_PAIRS = (
  ('neg_log', 'inv_quarter_power'),
  ('neg_log', 'inv_five_quarter_power'),
  ('neg_log', 'singular_inner'),
  ('neg_log', 'psi'),
  ('inv_quarter_power', 'neg_log'),
  ('inv_quarter_power', 'blaschke_half'),
  ('sqrt_one_minus_z', 'inv_half_power'),
  ('sqrt_one_minus_z', 'exp_z'),
  ('singular_inner', 'neg_log'),
  ('singular_inner', 'psi'),
  ('blaschke_half', 'inv_quarter_power'),
  ('blaschke_complex', 'singular_inner'),
  ('psi', 'inv_half_power'),
  ('psi', 'shifted_inv_half_power'),
  ('mean_one_plus_z', 'inv_five_quarter_power'),
  ('exp_z', 'blaschke_complex'),
  ('monomial_5', 'neg_log'),
  ('shifted_inv_half_power', 'sqrt_one_minus_z'),
  ('log_e_over_one_minus_z', 'blaschke_half'),
  ('inv_half_power', 'psi'),
)
