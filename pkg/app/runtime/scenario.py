"""
Scenario - one mission instance: world, team, predicates, automaton and the
failure schedule, loaded from a JSON document.
"""
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from app.automaton.analysis import prune
from app.automaton.loader import load_nba, load_predicates
from app.automaton.nba import Nba
from app.errors import ScenarioError
from app.file_manager import read_document
from app.formula.predicates import ALL, Predicate
from app.formula.violation import PenaltyMap
from app.world.capabilities import CapabilityMatrix, FailureEvent
from app.world.grid import Cell, WorldModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrendGrid:
    """Nested failure sets and the injection steps to try each one at."""
    failure_sets: Tuple[Tuple[Tuple[int, Union[int, str]], ...], ...] = ()
    steps: Tuple[int, ...] = ()


@dataclass(frozen=True)
class Scenario:
    name: str
    world: WorldModel
    start: Tuple[Cell, ...]
    capabilities: CapabilityMatrix
    predicates: Mapping[str, Predicate]
    penalties: PenaltyMap
    automaton: Nba  # as written in the document, before pruning
    failures: Tuple[FailureEvent, ...] = ()
    suffix_cycles: Optional[int] = None
    trends: TrendGrid = field(default_factory=TrendGrid)

    @property
    def nba(self) -> Nba:
        return prune(self.automaton)

    def with_failures(self, failures: Sequence[FailureEvent]) -> "Scenario":
        return replace(self, failures=tuple(sorted(failures, key=lambda ev: ev.time)))


def _cell(raw: Any, what: str) -> Cell:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ScenarioError(f"{what} must be an [x, y] pair, got {raw!r}")
    return (int(raw[0]), int(raw[1]))


def _loss(raw: Any) -> Tuple[int, Union[int, str]]:
    robot, skill = raw
    return (int(robot), ALL if skill == ALL else int(skill))


def parse_failures(raw: Sequence[Mapping[str, Any]]) -> Tuple[FailureEvent, ...]:
    events = [FailureEvent(int(entry["time"]), tuple(_loss(loss) for loss in entry["losses"])) for entry in raw]
    return tuple(sorted(events, key=lambda ev: ev.time))


def scenario_from_document(document: Mapping[str, Any], name: str = "scenario") -> Scenario:
    """
    Document layout:
        world: width, height, obstacles [[x, y]], regions {name: [x, y]}, mobility_skill
        robots: skill_count, start [[x, y]] (one per robot), skills {robot: [skill, ...]}
        predicates: see load_predicates
        automaton: see load_nba
        failures: [{time, losses: [[robot, skill | "all"]]}]
        options: suffix_cycles, trends {failure_sets, steps}

    Raises:
        ScenarioError: a section is missing or inconsistent
    """
    for section in ("world", "robots", "predicates", "automaton"):
        if section not in document:
            raise ScenarioError(f"scenario {name} has no {section!r} section")
    try:
        robots = document["robots"]
        start = tuple(_cell(c, "start position") for c in robots["start"])
        raw_world = document["world"]
        world = WorldModel(
            width=int(raw_world["width"]),
            height=int(raw_world["height"]),
            obstacles=frozenset(_cell(c, "obstacle") for c in raw_world.get("obstacles", [])),
            regions={str(k): _cell(v, f"region {k}") for k, v in raw_world.get("regions", {}).items()},
            robot_count=len(start),
            skill_count=int(robots["skill_count"]),
            mobility_skill=raw_world.get("mobility_skill", 1),
        )
        skills: Dict[int, List[int]] = {int(r): [int(c) for c in held] for r, held in robots["skills"].items()}
        options = document.get("options", {})
        trends = options.get("trends", {})
        grid = TrendGrid(
            tuple(tuple(_loss(loss) for loss in group) for group in trends.get("failure_sets", [])),
            tuple(int(step) for step in trends.get("steps", [])),
        )
        cycles = options.get("suffix_cycles")
        failures = parse_failures(document.get("failures", []))
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"scenario {name} is malformed: {exc}")

    for robot, cell in enumerate(start, start=1):
        if not world.is_free(cell):
            raise ScenarioError(f"robot {robot} starts on {cell}, which is outside the grid or blocked")
    capabilities = CapabilityMatrix.from_skills(world.robot_count, world.skill_count, skills)
    predicates, penalties = load_predicates(document["predicates"])
    automaton = load_nba(document["automaton"], predicates)
    logger.info("loaded scenario %s: %d robots, %d skills, %d automaton states",
                name, world.robot_count, world.skill_count, len(automaton.states))
    return Scenario(name, world, start, capabilities, predicates, penalties, automaton, failures,
                    None if cycles is None else int(cycles), grid)


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    return scenario_from_document(read_document(path), name=path.stem)
