import json
import logging
import math
import os
import re
import tempfile

import numpy as np
import pandas as pd

from .config import Config
from .errors import InvalidSpec


logger = logging.getLogger(__name__)


def fit_slope(x, y, log_x=True, log_y=True):
  """Least-squares slope of y against x, on log scales by default.

  Args:
    x, y (array-like): samples; nonpositive values are dropped when the
      corresponding axis is logarithmic.
    log_x (bool): take log of x. Default True.
    log_y (bool): take log of y. Default True.

  Returns:
    float: slope, or nan when fewer than two usable points remain.
  """
  x = np.asarray(x, dtype=float)
  y = np.asarray(y, dtype=float)
  keep = np.isfinite(x) & np.isfinite(y)
  if log_x:
    keep &= x > 0
  if log_y:
    keep &= y > 0
  if keep.sum() < 2:
    return math.nan
  x, y = x[keep], y[keep]
  if log_x:
    x = np.log(x)
  if log_y:
    y = np.log(y)
  return float(np.polyfit(x, y, 1)[0])


def parse_int_list(text):
  """Parse `16..1024` (doubling), `1:10` (consecutive) or `4,8,16`."""
  text = text.strip()
  try:
    match = re.fullmatch(r'(\d+)\.\.(\d+)', text)
    if match:
      lo, hi = int(match.group(1)), int(match.group(2))
      if lo < 1 or hi < lo:
        raise(ValueError(text))
      out = []
      n = lo
      while n <= hi:
        out.append(n)
        n *= 2
      return out
    match = re.fullmatch(r'(\d+):(\d+)', text)
    if match:
      return list(range(int(match.group(1)), int(match.group(2)) + 1))
    return [int(part) for part in text.split(',') if part.strip()]
  except ValueError:
    raise(InvalidSpec(f'cannot parse integer list `{text}`'))


def parse_float_list(text):
  try:
    return [float(part) for part in text.split(',') if part.strip()]
  except ValueError:
    raise(InvalidSpec(f'cannot parse number list `{text}`'))


def encode_complex(x):
  """JSON-friendly form: a float when real, else [re, im]."""
  x = complex(x)
  return x.real if x.imag == 0 else [x.real, x.imag]


def _json_default(obj):
  if isinstance(obj, complex):
    return encode_complex(obj)
  if isinstance(obj, np.integer):
    return int(obj)
  if isinstance(obj, np.floating):
    return float(obj)
  if isinstance(obj, np.bool_):
    return bool(obj)
  if isinstance(obj, np.ndarray):
    return obj.tolist()
  raise(TypeError(f'{type(obj).__name__} is not JSON serializable'))


def dumps(obj):
  """Deterministic JSON: sorted keys, fixed indent, numpy-aware."""
  return json.dumps(obj, sort_keys=True, indent=2, default=_json_default)


def atomic_write(path, text):
  """Write `text` to a temporary file beside `path`, then move it over."""
  directory = os.path.dirname(os.path.abspath(path))
  os.makedirs(directory, exist_ok=True)
  fd, tmp = tempfile.mkstemp(dir=directory, prefix='.tmp-')
  try:
    with os.fdopen(fd, 'w', newline='') as f:
      f.write(text)
    os.replace(tmp, path)
  except BaseException:
    if os.path.exists(tmp):
      os.remove(tmp)
    raise
  logger.debug('wrote %s', path)


def table_to_csv(df):
  return df.to_csv(index=False, float_format=Config.CSV_FLOAT_FORMAT,
                   lineterminator='\n')


def write_table(df, path):
  atomic_write(path, table_to_csv(df))


def records_frame(rows, columns):
  """DataFrame with a fixed column order, for deterministic CSV."""
  return pd.DataFrame.from_records(rows, columns=columns)
