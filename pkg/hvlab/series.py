"""Truncated Taylor series arithmetic.

A `TaylorSeries` stores the coefficients a_0..a_N of an analytic function
on the unit disk. Every operation in this module works on coefficients
(recurrences and convolutions), never by sampling and transforming back,
so identities between operations hold to rounding.

Evaluation carries a truncation-error bound taken from the series'
`TailHint`. Hints are either supplied analytically by the catalog or
fitted from the last quartile of the stored coefficients, in which case
they are marked heuristic.
"""
import collections
import dataclasses
import logging
import math

import numpy as np

from .config import Config
from .errors import InvalidSpec, OrderOverflow, RadiusOutOfRange


logger = logging.getLogger(__name__)


# Tail hint kinds.
GEOMETRIC = 'geometric'
POLYNOMIAL = 'polynomial'
EXACT = 'exact'

# Products switch to shifted sums when a factor has this few nonzeros.
SPARSE_TERMS = 32

# Too few coefficients to fit a tail from.
MIN_FIT_ORDER = 8

Evaluation = collections.namedtuple(
  'Evaluation', ['value', 'error', 'heuristic'])


@dataclasses.dataclass(frozen=True)
class TailHint:
  """Coefficient envelope used to bound truncation errors.

  geometric:  |a_k| <= C * exp(-rate * k)    (rate = log rho)
  polynomial: |a_k| <= C * max(k, 1)**rate   (rate = m)
  exact:      a_k = 0 beyond the stored order

  The scale C is stored as its logarithm so that steep envelopes do not
  overflow.
  """
  kind: str
  log_scale: float = 0.0
  rate: float = 0.0
  heuristic: bool = False

  def __post_init__(self):
    if self.kind not in (GEOMETRIC, POLYNOMIAL, EXACT):
      raise(ValueError(f'unknown tail hint kind `{self.kind}`'))

  @classmethod
  def exact(cls, heuristic=False):
    return cls(EXACT, heuristic=heuristic)

  @classmethod
  def geometric(cls, scale, rho, heuristic=False):
    return cls(GEOMETRIC, _log(scale), math.log(rho), heuristic)

  @classmethod
  def polynomial(cls, scale, m, heuristic=False):
    return cls(POLYNOMIAL, _log(scale), float(m), heuristic)

  def log_bound(self, k):
    k = np.asarray(k, dtype=float)
    if self.kind == EXACT:
      return np.full(k.shape, -np.inf)
    if self.kind == GEOMETRIC:
      return self.log_scale - self.rate * k
    return self.log_scale + self.rate * np.log(np.maximum(k, 1.0))

  def bound(self, k):
    return np.exp(self.log_bound(k))

  def scaled(self, c):
    """Hint for the coefficients multiplied by the scalar `c`."""
    if c == 0:
      return TailHint.exact(self.heuristic)
    return dataclasses.replace(self, log_scale=self.log_scale + math.log(abs(c)))

  def powered(self, p):
    """Hint for |a_k|**p."""
    return dataclasses.replace(
      self, log_scale=p * self.log_scale, rate=p * self.rate)

  def tail(self, order, r):
    """Upper bound for the sum over k > order of bound(k) * r**k."""
    if self.kind == EXACT or r == 0:
      return 0.0
    if r < 0:
      raise(RadiusOutOfRange(f'radius must be non-negative, got {r}'))

    log_r = math.log(r)
    start = order + 1

    if self.kind == GEOMETRIC:
      log_q = log_r - self.rate
      if log_q >= 0:
        return math.inf
      return math.exp(
        self.log_scale + start * log_q - math.log(-math.expm1(log_q)))

    if r >= 1:
      return math.inf

    # Past k_star the term ratio stays below q < 1, so the rest is a
    # geometric series.
    q = 0.5 * (1 + r)
    m = self.rate
    if m <= 0:
      k_star = start
    else:
      k_star = max(start, math.ceil(1 / ((q / r) ** (1 / m) - 1)))
    if k_star - start > (1 << 24):
      return math.inf

    ks = np.arange(start, k_star + 1, dtype=float)
    log_terms = self.log_scale + m * np.log(ks) + ks * log_r
    peak = log_terms.max()
    if not np.isfinite(peak):
      return 0.0 if peak == -np.inf else math.inf
    head = np.exp(log_terms[:-1] - peak).sum()
    rest = math.exp(log_terms[-1] - peak) / (1 - q)
    total = peak + math.log(head + rest)
    return math.exp(total) if total < 700 else math.inf


def _log(x):
  return math.log(x) if x > 0 else -math.inf


def fit_tail_hint(coeffs):
  """Fit a heuristic `TailHint` to the last quartile of `coeffs`.

  Both envelope shapes are fitted by least squares on log|a_k| and the
  one with the smaller residual wins. The scale is then raised until the
  envelope dominates every stored coefficient, so the hint is always
  consistent with the data it came from.
  """
  mod = np.abs(np.asarray(coeffs))
  order = len(mod) - 1
  if order < MIN_FIT_ORDER:
    return TailHint.exact(heuristic=True)

  ks = np.arange(max(1, (3 * order) // 4), order + 1)
  nonzero = mod[ks] > 0
  if nonzero.sum() < 4:
    return TailHint.exact(heuristic=True)

  ks = ks[nonzero]
  y = np.log(mod[ks])

  fits = {}
  for kind, x in ((GEOMETRIC, ks.astype(float)), (POLYNOMIAL, np.log(ks))):
    coef, residual = np.polyfit(x, y, 1, full=True)[:2]
    residual = residual[0] if len(residual) else 0.0
    rate = -coef[0] if kind == GEOMETRIC else coef[0]
    fits[kind] = (residual, rate)

  kind = min(fits, key=lambda name: fits[name][0])
  shape = TailHint(kind, 0.0, fits[kind][1], heuristic=True)

  stored = np.flatnonzero(mod)
  log_scale = np.max(np.log(mod[stored]) - shape.log_bound(stored))
  return dataclasses.replace(shape, log_scale=float(log_scale))


class TaylorSeries(object):
  """Degree-N truncation of a power series about 0.

  Instances are immutable: the coefficient array is stored read-only and
  every operation returns a new series.
  """

  # Let numpy scalars defer to the reflected operators below.
  __array_ufunc__ = None

  def __init__(self, coeffs, tail_hint=None):
    """Build a series from its coefficients.

    Args:
      coeffs (array-like): a_0..a_N. Scalars are treated as constants.
      tail_hint (TailHint): optional analytic envelope for the
        coefficients beyond N. It is checked against the stored
        coefficients. When omitted a heuristic hint is fitted lazily.
    """
    coeffs = np.array(np.atleast_1d(coeffs), dtype=complex).ravel()
    if len(coeffs) == 0:
      raise(ValueError('a series needs at least one coefficient'))
    if len(coeffs) - 1 > Config.MAX_ORDER:
      raise(OrderOverflow(
        f'order {len(coeffs) - 1} exceeds the maximum {Config.MAX_ORDER}'
      ))
    if not np.all(np.isfinite(coeffs)):
      raise(ValueError('series coefficients must be finite'))
    coeffs.setflags(write=False)
    self._coeffs = coeffs

    if tail_hint is not None and tail_hint.kind != EXACT:
      stored = np.flatnonzero(coeffs)
      excess = np.log(np.abs(coeffs[stored])) - tail_hint.log_bound(stored)
      if len(excess) and excess.max() > 1e-9:
        raise(InvalidSpec(
          f'tail hint {tail_hint} is exceeded by the stored coefficients'
        ))
    self._tail_hint = tail_hint

    # Memoize for use with @property and `differentiate`.
    self._fitted_hint = None
    self._derivative = None

  @classmethod
  def constant(cls, c, order=0):
    coeffs = np.zeros(order + 1, dtype=complex)
    coeffs[0] = c
    return cls(coeffs, tail_hint=TailHint.exact())

  @classmethod
  def unit(cls, order=0):
    return cls.constant(1.0, order)

  @classmethod
  def monomial(cls, n, order=None, coef=1.0):
    if n < 0:
      raise(ValueError(f'monomial degree must be >= 0, got {n}'))
    order = n if order is None else order
    coeffs = np.zeros(order + 1, dtype=complex)
    if n <= order:
      coeffs[n] = coef
    return cls(coeffs, tail_hint=TailHint.exact())

  @property
  def coeffs(self):
    return self._coeffs

  @property
  def order(self):
    return len(self._coeffs) - 1

  @property
  def tail_hint(self):
    if self._tail_hint is not None:
      return self._tail_hint
    if self._fitted_hint is None:
      self._fitted_hint = fit_tail_hint(self._coeffs)
    return self._fitted_hint

  def is_constant(self):
    return not np.any(self._coeffs[1:])

  def truncate(self, order):
    """Return the degree-`order` truncation, zero-padding if needed."""
    if order < 0:
      raise(ValueError(f'order must be >= 0, got {order}'))
    if order <= self.order:
      hint = self._tail_hint
      if _is_exact(self) and np.any(self._coeffs[order + 1:]):
        hint = None
      return TaylorSeries(self._coeffs[:order + 1], hint)
    return TaylorSeries(_padded(self._coeffs, order), self._tail_hint)

  def __call__(self, z):
    return evaluate(self, z).value

  def __len__(self):
    return len(self._coeffs)

  def __neg__(self):
    return self * -1

  def __add__(self, other):
    return linear_combine([(1, self), (1, _as_series(other))])

  __radd__ = __add__

  def __sub__(self, other):
    return linear_combine([(1, self), (-1, _as_series(other))])

  def __rsub__(self, other):
    return linear_combine([(1, _as_series(other)), (-1, self)])

  def __mul__(self, other):
    if isinstance(other, TaylorSeries):
      return cauchy_product(self, other)
    if not np.isscalar(other):
      return NotImplemented
    hint = None if self._tail_hint is None else self._tail_hint.scaled(other)
    return TaylorSeries(self._coeffs * other, hint)

  __rmul__ = __mul__

  def __truediv__(self, other):
    if not np.isscalar(other):
      return NotImplemented
    return self * (1 / other)

  def __repr__(self):
    head = ', '.join(f'{c:.6g}' for c in self._coeffs[:4])
    more = ', ...' if self.order > 3 else ''
    return f'{self.__class__.__name__}(order={self.order}, [{head}{more}])'


def _as_series(x):
  if isinstance(x, TaylorSeries):
    return x
  return TaylorSeries.constant(x)


def _padded(a, order):
  out = np.zeros(order + 1, dtype=complex)
  n = min(len(a), order + 1)
  out[:n] = a[:n]
  return out


def linear_combine(terms):
  """Termwise combination sum(c * f) over (c, f) pairs.

  Output order is the largest input order; shorter inputs are
  zero-padded.
  """
  terms = list(terms)
  if not terms:
    return TaylorSeries([0.0])

  order = max(f.order for _, f in terms)
  out = np.zeros(order + 1, dtype=complex)
  for c, f in terms:
    out[:f.order + 1] += c * f.coeffs

  hint = None
  if all(f._tail_hint is not None and f._tail_hint.kind == EXACT
         for _, f in terms):
    hint = TailHint.exact()
  return TaylorSeries(out, hint)


def shift(f, n):
  """Multiply by z**n."""
  if n < 0:
    raise(ValueError(f'shift must be >= 0, got {n}'))
  hint = TailHint.exact() if _is_exact(f) else None
  return TaylorSeries(np.concatenate([np.zeros(n), f.coeffs]), hint)


def cauchy_product(f, g, order=None):
  """Coefficients c_n = sum_j a_j b_{n-j} for n <= order.

  The operands are put in a canonical order first, so the result is
  bitwise symmetric in f and g.
  """
  full = f.order + g.order
  order = full if order is None else order
  if not 0 <= order <= full:
    raise(ValueError(f'order must lie in [0, {full}], got {order}'))

  if _sort_key(f) > _sort_key(g):
    f, g = g, f

  a = f.coeffs[:order + 1]
  b = g.coeffs[:order + 1]

  nz_a = np.flatnonzero(a)
  nz_b = np.flatnonzero(b)
  if min(len(nz_a), len(nz_b)) <= SPARSE_TERMS:
    if len(nz_a) <= len(nz_b):
      sparse, idx, dense = a, nz_a, b
    else:
      sparse, idx, dense = b, nz_b, a
    out = np.zeros(order + 1, dtype=complex)
    dense = _padded(dense, order)
    for j in idx:
      out[j:] += sparse[j] * dense[:order + 1 - j]
  else:
    out = np.convolve(a, b)[:order + 1]
    out = _padded(out, order)

  hint = None
  if _is_exact(f) and _is_exact(g) and order == full:
    hint = TailHint.exact()
  return TaylorSeries(out, hint)


def _sort_key(f):
  return (f.order, f.coeffs.tobytes())


def _is_exact(f):
  return f._tail_hint is not None and f._tail_hint.kind == EXACT


def _require_unit_constant(f, what):
  if f.coeffs[0] == 0:
    raise(InvalidSpec(
      f'{what} needs a nonvanishing constant term; got a_0 = 0'
    ))


def reciprocal(f, order=None):
  """Truncation of 1/f through degree `order` (default f.order)."""
  _require_unit_constant(f, 'reciprocal')
  order = f.order if order is None else order
  a = _padded(f.coeffs, order)
  b = np.zeros(order + 1, dtype=complex)
  b[0] = 1 / a[0]
  for n in range(1, order + 1):
    b[n] = -np.dot(a[1:n + 1], b[n - 1::-1]) * b[0]
  return TaylorSeries(b)


def series_log(f, order=None):
  """Principal-branch log f via  a_0 n h_n = n a_n - sum k h_k a_{n-k}."""
  _require_unit_constant(f, 'log')
  order = f.order if order is None else order
  a = _padded(f.coeffs, order)
  h = np.zeros(order + 1, dtype=complex)
  h[0] = np.log(a[0])
  kh = np.zeros(order + 1, dtype=complex)
  for n in range(1, order + 1):
    acc = np.dot(kh[1:n], a[n - 1:0:-1]) if n > 1 else 0
    h[n] = (n * a[n] - acc) / (n * a[0])
    kh[n] = n * h[n]
  return TaylorSeries(h)


def series_exp(f, order=None):
  """exp f via  n e_n = sum_{k=1}^{n} k a_k e_{n-k}."""
  order = f.order if order is None else order
  a = _padded(f.coeffs, order)
  ka = a * np.arange(order + 1)
  e = np.zeros(order + 1, dtype=complex)
  e[0] = np.exp(a[0])
  for n in range(1, order + 1):
    e[n] = np.dot(ka[1:n + 1], e[n - 1::-1]) / n
  return TaylorSeries(e)


def series_pow(f, alpha, order=None):
  """Principal-branch f**alpha, computed as exp(alpha * log f)."""
  return series_exp(series_log(f, order) * alpha)


def differentiate(f):
  if f._derivative is not None:
    return f._derivative
  if f.order == 0:
    return TaylorSeries([0.0], TailHint.exact())
  k = np.arange(1, f.order + 1)
  hint = TailHint.exact() if _is_exact(f) else None
  return TaylorSeries(f.coeffs[1:] * k, hint)


def antiderivative(f):
  """Primitive vanishing at 0."""
  out = np.zeros(f.order + 2, dtype=complex)
  out[1:] = f.coeffs / np.arange(1, f.order + 2)
  hint = TailHint.exact() if _is_exact(f) else None
  primitive = TaylorSeries(out, hint)
  primitive._derivative = f
  return primitive


# --- Evaluation ---

_SPLITTER = 134217729.0  # 2**27 + 1


def _split(a):
  c = _SPLITTER * a
  hi = c - (c - a)
  return hi, a - hi


def _two_prod(a, b):
  p = a * b
  ah, al = _split(a)
  bh, bl = _split(b)
  return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _two_sum(a, b):
  s = a + b
  bb = s - a
  return s, (a - (s - bb)) + (b - bb)


def _horner_compensated(coeffs, z):
  zr, zi = z.real, z.imag
  sr = np.full(z.shape, coeffs[-1].real)
  si = np.full(z.shape, coeffs[-1].imag)
  cr = np.zeros(z.shape)
  ci = np.zeros(z.shape)
  for a in coeffs[-2::-1]:
    p1, e1 = _two_prod(sr, zr)
    p2, e2 = _two_prod(si, zi)
    pr, e3 = _two_sum(p1, -p2)
    q1, f1 = _two_prod(sr, zi)
    q2, f2 = _two_prod(si, zr)
    pi, f3 = _two_sum(q1, q2)
    sr, g1 = _two_sum(pr, a.real)
    si, g2 = _two_sum(pi, a.imag)
    cr, ci = (cr * zr - ci * zi + (e1 - e2 + e3 + g1),
              cr * zi + ci * zr + (f1 + f2 + f3 + g2))
  return (sr + cr) + 1j * (si + ci)


# Points times coefficients up to which plain evaluation builds the
# power matrix instead of looping.
POWER_MATRIX_LIMIT = 1 << 22


def _horner(coeffs, z):
  if z.size * len(coeffs) <= POWER_MATRIX_LIMIT:
    return (z[..., None] ** np.arange(len(coeffs))) @ coeffs
  out = np.full(z.shape, coeffs[-1], dtype=complex)
  for a in coeffs[-2::-1]:
    out = out * z + a
  return out


def evaluate_many(f, z, compensated=False):
  """Evaluate the truncation at an array of points inside the disk."""
  z = np.asarray(z, dtype=complex)
  if np.any(np.abs(z) >= 1):
    raise(RadiusOutOfRange('evaluation points must lie in the open disk'))
  horner = _horner_compensated if compensated else _horner
  return horner(f.coeffs, z)


def evaluate(f, z):
  """Compensated Horner value of f at z plus a truncation-error bound.

  Returns:
    Evaluation: `value`, `error` (bound on the neglected tail, `inf`
    when the tail cannot be bounded at |z|), and `heuristic` (whether
    the bound came from a fitted hint).
  """
  z = complex(z)
  if abs(z) >= 1:
    raise(RadiusOutOfRange(f'|z| must be < 1, got {abs(z)}'))
  value = complex(_horner_compensated(f.coeffs, np.array([z]))[0])
  hint = f.tail_hint
  return Evaluation(value, hint.tail(f.order, abs(z)), hint.heuristic)


def circle_size(order, minimum=Config.MIN_ANGLES):
  """Smallest power of two >= max(2 * (order + 1), minimum)."""
  need = max(2 * (order + 1), minimum)
  return 1 << (need - 1).bit_length()


def evaluate_on_circle(f, r, count, phase=0.0):
  """f(r * exp(i * (phase + 2 pi m / count))) for m = 0..count-1.

  Computed by one FFT of the radius-scaled, zero-padded coefficients.
  """
  if not 0 <= r < 1:
    raise(RadiusOutOfRange(f'radius must lie in [0, 1), got {r}'))
  if count & (count - 1) or count < 2 * (f.order + 1):
    raise(ValueError(
      f'count must be a power of two >= {2 * (f.order + 1)}, got {count}'
    ))
  k = np.arange(f.order + 1)
  scaled = f.coeffs * r ** k
  if phase:
    scaled = scaled * np.exp(1j * phase * k)
  padded = np.zeros(count, dtype=complex)
  padded[:f.order + 1] = scaled
  return np.fft.ifft(padded) * count


def tail_error(f, r, power=1):
  """Bound for sum_{k>N} |a_k|**power * r**(power * k) from the hint."""
  hint = f.tail_hint
  if power != 1:
    hint = hint.powered(power)
  return hint.tail(f.order, r ** power)


def majorant(f, r, power=1):
  """sum_k |a_k|**power * r**(power * k) over the stored coefficients."""
  mod = np.abs(f.coeffs) ** power
  return float(np.dot(mod, (r ** power) ** np.arange(f.order + 1)))


def safe_radius(f, tol=Config.SAFE_TAIL_TOL, relative=False):
  """Largest r in [0, 1) whose certified tail error stays below `tol`.

  With `relative`, the bound is `tol * max(1, majorant(f, r))`.
  Found by bisection, since the tail bound increases with r.
  """
  def ok(r):
    limit = tol * max(1.0, majorant(f, r)) if relative else tol
    return tail_error(f, r) <= limit

  if f.tail_hint.kind == EXACT:
    return 1.0
  lo, hi = 0.0, 1.0
  if not ok(lo):
    return 0.0
  for _ in range(60):
    mid = 0.5 * (lo + hi)
    if ok(mid):
      lo = mid
    else:
      hi = mid
  return lo
