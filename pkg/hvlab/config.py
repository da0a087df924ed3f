import dataclasses
import json
import logging
import os

from .errors import InvalidSpec


logger = logging.getLogger(__name__)


class Config:
  """Library-wide defaults.

  Values that can reasonably differ between machines are read from
  environment variables; everything else is a plain class attribute.
  Per-run choices live in `RunConfig` instead.
  """

  # --- Truncation ---
  MAX_ORDER = int(os.environ.get('HVLAB_MAX_ORDER', 1 << 21))
  DEFAULT_ORDER = 4096
  IDENTITY_ORDER = 256

  # --- Grids ---
  LADDER_DEPTH = 12
  DYADIC_DEPTH = 10
  GAUSS_POINTS = 128
  BOX_GAUSS_POINTS = 24
  MIN_ANGLES = 64
  MAX_ANGLES = 1 << 22

  # --- Tolerances ---
  CONVERGENCE_TOL = 1e-6
  IDENTITY_TOL = 1e-12
  SAFE_TAIL_TOL = 1e-8
  GROWTH_FIT_MIN = 0.05

  # Increments contracting at least this fast count as summable.
  CONTRACTION_MAX = 0.9

  COND_THRESHOLD = 1e12

  # --- Output ---
  CSV_FLOAT_FORMAT = '%.17g'
  CONFIG_VERSION = 1

  # --- Environment ---
  MAX_THREADS = int(os.environ.get('HVLAB_THREADS', os.cpu_count() or 1))
  LOG_LEVEL = os.environ.get('HVLAB_LOG_LEVEL', 'WARNING')


@dataclasses.dataclass(frozen=True)
class RunConfig:
  """Per-run parameters, loaded from JSON and overridden by CLI flags.

  JSON keys follow the documented schema (`docs/run_config.schema.json`):
  `N`, `J`, `L`, `gauss_points`, `angles`, `tol`, `identity_tol`,
  `seed`, `threads`, `strict`, `out`.
  """
  order: int = Config.DEFAULT_ORDER
  ladder: int = Config.LADDER_DEPTH
  depth: int = Config.DYADIC_DEPTH
  gauss_points: int = Config.GAUSS_POINTS
  angles: object = 'auto'
  conv_tol: float = Config.CONVERGENCE_TOL
  identity_tol: float = Config.IDENTITY_TOL
  out: str = 'hvlab-out'
  seed: int = 0
  threads: int = 1
  strict: bool = False

  # JSON key -> field name.
  _JSON_KEYS = {
    'N': 'order',
    'J': 'ladder',
    'L': 'depth',
    'gauss_points': 'gauss_points',
    'angles': 'angles',
    'tol': 'conv_tol',
    'identity_tol': 'identity_tol',
    'seed': 'seed',
    'threads': 'threads',
    'strict': 'strict',
    'out': 'out',
  }

  def __post_init__(self):
    for name in ('order', 'ladder', 'depth', 'gauss_points', 'threads'):
      value = getattr(self, name)
      if isinstance(value, bool) or not isinstance(value, int):
        raise(InvalidSpec(
          f'`{name}` should be int, not {type(value).__name__}'
        ))
      if value <= 0:
        raise(InvalidSpec(f'`{name}` must be positive, got {value}'))

    if self.order > Config.MAX_ORDER:
      raise(InvalidSpec(
        f'`order` {self.order} exceeds the maximum {Config.MAX_ORDER}'
      ))

    if self.seed < 0:
      raise(InvalidSpec(f'`seed` must be non-negative, got {self.seed}'))

    for name in ('conv_tol', 'identity_tol'):
      value = getattr(self, name)
      if not 0 < value < 1:
        raise(InvalidSpec(f'`{name}` must lie in (0, 1), got {value}'))

    if self.angles != 'auto':
      if isinstance(self.angles, bool) or not isinstance(self.angles, int) \
          or self.angles < 2 or self.angles & (self.angles - 1):
        raise(InvalidSpec(
          f'`angles` must be "auto" or a power of two, got {self.angles!r}'
        ))

  @classmethod
  def from_dict(cls, d):
    d = dict(d)
    version = d.pop('version', Config.CONFIG_VERSION)
    if version != Config.CONFIG_VERSION:
      raise(InvalidSpec(f'unsupported config version {version}'))

    unknown = set(d) - set(cls._JSON_KEYS)
    if unknown:
      raise(InvalidSpec(f'unknown config keys: {sorted(unknown)}'))

    return cls(**{cls._JSON_KEYS[key]: value for key, value in d.items()})

  @classmethod
  def from_json(cls, path):
    with open(path) as f:
      try:
        d = json.load(f)
      except json.JSONDecodeError as e:
        raise(InvalidSpec(f'{path} is not valid JSON: {e}'))

    logger.debug('Loaded run config from %s', path)
    return cls.from_dict(d)

  def to_dict(self):
    d = {'version': Config.CONFIG_VERSION}
    for key, name in self._JSON_KEYS.items():
      d[key] = getattr(self, name)
    return d

  def replace(self, **changes):
    """Return a copy with `changes` applied, skipping `None` values."""
    changes = {k: v for k, v in changes.items() if v is not None}
    return dataclasses.replace(self, **changes)
