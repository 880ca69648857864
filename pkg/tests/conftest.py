import json
from pathlib import Path

import numpy as np
import pytest

from jamscope.sim.scenario import ScenarioConfig

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def data_dir(tmp_path, monkeypatch):
    """Isolated JAMSCOPE_DATA; runs from tmp_path so no stray .env is picked up."""
    directory = tmp_path / "data"
    directory.mkdir()
    monkeypatch.setenv("JAMSCOPE_DATA", str(directory))
    monkeypatch.chdir(tmp_path)
    return directory


@pytest.fixture
def short_config():
    """10 s scenarios (100 ticks each); the jammers reach the receiver after 6 s."""
    return ScenarioConfig(duration=10.0, dist_initial=40.0)


@pytest.fixture
def short_config_file(tmp_path, short_config):
    return short_config.to_file(str(tmp_path / "short.cfg"), header="short test runs")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def golden():
    def load(name):
        with open(GOLDEN_DIR / name) as f:
            return json.load(f)
    return load
