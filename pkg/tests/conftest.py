"""
Shared fixtures: the bundled scenarios and a one-corridor world small enough
to trace plans by hand.
"""
import json

import pytest

from app.config import BUNDLED_SCENARIOS
from app.runtime.scenario import load_scenario, scenario_from_document


@pytest.fixture
def relay():
    return load_scenario(BUNDLED_SCENARIOS / "relay.json")


@pytest.fixture
def relay_document():
    with open(BUNDLED_SCENARIOS / "relay.json", "r", encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture
def factory():
    return load_scenario(BUNDLED_SCENARIOS / "factory.json")


def corridor_document(robots=1):
    """
    A 4x2 strip with one region at (3, 0). Robot 1 must weld there once and
    the mission is then accepted forever. Extra robots can weld too.
    """
    starts = [[0, 0], [0, 1], [1, 1]][:robots]
    return {
        "world": {"width": 4, "height": 2, "regions": {"goal": [3, 0]}, "mobility_skill": 1},
        "robots": {"skill_count": 2, "start": starts,
                   "skills": {str(r): [1, 2] for r in range(1, robots + 1)}},
        "predicates": {"weld": {"kind": "apply", "skill": 2, "robot": 1, "region": "goal", "penalty": 10}},
        "automaton": {
            "states": [{"id": "q0", "initial": True}, {"id": "q1", "accepting": True}],
            "transitions": [
                {"from": "q0", "to": "q0", "dnf": "true"},
                {"from": "q0", "to": "q1", "dnf": [["pi:weld"]]},
                {"from": "q1", "to": "q1", "dnf": "true"},
            ],
        },
    }


@pytest.fixture
def corridor():
    return scenario_from_document(corridor_document(1), name="corridor")


@pytest.fixture
def corridor_pair():
    return scenario_from_document(corridor_document(2), name="corridor_pair")
