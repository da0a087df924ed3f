import json

import pytest

from hvlab.config import Config, RunConfig
from hvlab.errors import InvalidSpec


def test_defaults():
  config = RunConfig()
  assert config.order == Config.DEFAULT_ORDER
  assert config.angles == 'auto'
  assert not config.strict


@pytest.mark.parametrize('changes', [
  dict(order=0),
  dict(order=2.5),
  dict(ladder=True),
  dict(seed=-1),
  dict(conv_tol=0.0),
  dict(identity_tol=1.0),
  dict(angles=48),
  dict(angles=1),
  dict(order=Config.MAX_ORDER + 1),
])
def test_rejects_invalid_values(changes):
  with pytest.raises(InvalidSpec):
    RunConfig(**changes)


def test_from_dict_maps_json_keys():
  config = RunConfig.from_dict(
    {'version': 1, 'N': 512, 'J': 6, 'L': 5, 'tol': 1e-8, 'angles': 128})
  assert (config.order, config.ladder, config.depth) == (512, 6, 5)
  assert config.conv_tol == 1e-8 and config.angles == 128


def test_from_dict_rejects_unknown_keys_and_versions():
  with pytest.raises(InvalidSpec, match='unknown config keys'):
    RunConfig.from_dict({'N': 512, 'order': 512})
  with pytest.raises(InvalidSpec, match='version'):
    RunConfig.from_dict({'version': 2})


def test_json_file(tmp_path):
  path = tmp_path / 'run.json'
  path.write_text(json.dumps(RunConfig(order=1024, seed=7).to_dict()))
  assert RunConfig.from_json(str(path)) == RunConfig(order=1024, seed=7)
  path.write_text('{"N": ')
  with pytest.raises(InvalidSpec):
    RunConfig.from_json(str(path))


def test_replace_skips_none():
  config = RunConfig().replace(order=64, seed=None)
  assert config.order == 64 and config.seed == 0
