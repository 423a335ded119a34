import json
from pathlib import Path

import pytest

from vtpursuit.scenario import load_scenario

REPO_ROOT = Path(__file__).resolve().parent.parent
SCENARIO_PATH = REPO_ROOT / "scenarios" / "four_vs_two.json"


@pytest.fixture(scope="session")
def scenario_path() -> Path:
    return SCENARIO_PATH


@pytest.fixture(scope="session")
def scenario():
    return load_scenario(SCENARIO_PATH)


@pytest.fixture()
def scenario_doc() -> dict:
    return json.loads(SCENARIO_PATH.read_text())
