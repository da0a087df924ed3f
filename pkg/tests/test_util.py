import json
import math
import os

import numpy as np
import pandas as pd
import pytest

from hvlab import util
from hvlab.errors import InvalidSpec


@pytest.mark.parametrize('text, expected', [
  ('16..128', [16, 32, 64, 128]),
  ('1:4', [1, 2, 3, 4]),
  ('4, 8,16', [4, 8, 16]),
  ('7', [7]),
])
def test_parse_int_list(text, expected):
  assert util.parse_int_list(text) == expected


@pytest.mark.parametrize('text', ['8..4', '0..4', 'a,b', '1.5'])
def test_parse_int_list_rejects(text):
  with pytest.raises(InvalidSpec):
    util.parse_int_list(text)


def test_parse_float_list():
  assert util.parse_float_list('0, 0.5,-0.25') == [0.0, 0.5, -0.25]
  with pytest.raises(InvalidSpec):
    util.parse_float_list('0.5,x')


def test_fit_slope():
  x = np.array([1.0, 2.0, 4.0, 8.0])
  assert util.fit_slope(x, 3 * x ** -2) == pytest.approx(-2.0)
  assert util.fit_slope(x, 2 * x + 1, log_x=False, log_y=False) \
    == pytest.approx(2.0)
  # Nonpositive values drop out on log axes.
  assert math.isnan(util.fit_slope([1.0, 2.0], [1.0, 0.0]))


def test_encode_complex():
  assert util.encode_complex(2) == 2.0
  assert util.encode_complex(1 - 2j) == [1.0, -2.0]


def test_dumps_is_deterministic_and_numpy_aware():
  text = util.dumps({'b': np.float64(0.1), 'a': np.arange(3), 'c': 1j,
                     'd': np.bool_(True), 'e': np.int64(4)})
  assert list(json.loads(text)) == ['a', 'b', 'c', 'd', 'e']
  assert json.loads(text) == {
    'a': [0, 1, 2], 'b': 0.1, 'c': [0.0, 1.0], 'd': True, 'e': 4}
  with pytest.raises(TypeError):
    util.dumps({'x': object()})


def test_csv_keeps_seventeen_digits():
  df = pd.DataFrame({'x': [0.1], 'y': [1 / 3]})
  text = util.table_to_csv(df)
  assert text.splitlines()[0] == 'x,y'
  x, y = text.splitlines()[1].split(',')
  assert float(x) == 0.1 and float(y) == 1 / 3


def test_atomic_write_replaces_file(tmp_path):
  path = tmp_path / 'nested' / 'out.txt'
  util.atomic_write(str(path), 'first')
  util.atomic_write(str(path), 'second')
  assert path.read_text() == 'second'
  assert os.listdir(path.parent) == ['out.txt']


def test_records_frame_keeps_column_order():
  df = util.records_frame([{'b': 1, 'a': 2}], ['a', 'b'])
  assert list(df.columns) == ['a', 'b']
