import pytest

from hvlab.config import RunConfig
from hvlab.geometry import RadiusLadder


@pytest.fixture
def small_config(tmp_path):
  return RunConfig(order=256, ladder=8, depth=4, out=str(tmp_path))


@pytest.fixture
def ladder():
  return RadiusLadder(8)
