"""
Context - who does what inside one conjunct, and which tasks each robot must not take.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional

from app.errors import FailedPredicateAbsent
from app.formula.guard import Conjunct
from app.formula.predicates import ApplyPredicate, Task
from app.world.capabilities import CapabilityMatrix


@dataclass(frozen=True)
class ForbiddenSet:
    """
    Tasks whose execution by one robot would falsify the conjunct.
    A forbidden region blocks every skill there (the robot may not even stand on it).
    """
    regions: FrozenSet[str] = frozenset()
    tasks: FrozenSet[Task] = frozenset()

    def __contains__(self, task: Task) -> bool:
        skill, region = task
        return region in self.regions or (skill, region) in self.tasks

    def __bool__(self) -> bool:
        return bool(self.regions or self.tasks)


EMPTY = ForbiddenSet()


@dataclass(frozen=True)
class AssignmentContext:
    conjunct: Conjunct
    robots_in_formula: FrozenSet[int]
    busy: Mapping[int, ApplyPredicate]
    forbidden: Mapping[int, ForbiddenSet]
    free: FrozenSet[int]
    robots: FrozenSet[int] = field(default_factory=frozenset)
    stranded: Mapping[int, Optional[str]] = field(default_factory=dict)

    def task_of(self, robot: int) -> Optional[ApplyPredicate]:
        return self.busy.get(robot)

    def blocks(self, robot: int, task: Task) -> bool:
        # a robot without mobility only serves the region it stands on
        if robot in self.stranded and self.stranded[robot] != task[1]:
            return True
        return task in self.forbidden.get(robot, EMPTY)


def build_context(conjunct: Conjunct, teams: Mapping[int, FrozenSet[int]], capabilities: CapabilityMatrix,
                  failed: ApplyPredicate, mobility_skill: Optional[int] = 1,
                  stationed: Optional[Mapping[int, Optional[str]]] = None) -> AssignmentContext:
    """
    Build g, V, R^d and the free set for one conjunct containing `failed`.
    The current assignment is read from the robots carried by the conjunct's literals.
    `stationed` maps robots to the region they stand on; robots lacking the
    mobility skill can only take tasks there.

    Raises:
        FailedPredicateAbsent: failed is not a positive literal of the conjunct
    """
    if not conjunct.contains_positive(failed):
        raise FailedPredicateAbsent(f"{failed} does not occur positively in {conjunct}")

    holdings = {(robot, skill) for skill, team in teams.items() for robot in team}
    in_formula = set()
    busy: Dict[int, ApplyPredicate] = {}
    for predicate in conjunct.positives:
        if predicate.robot is None:
            continue
        in_formula.add(predicate.robot)
        if predicate != failed:
            busy[predicate.robot] = predicate
    for predicate in conjunct.negated:
        if predicate.robot is not None:
            in_formula.add(predicate.robot)
    for avoid in conjunct.avoids:
        in_formula.update(r for r, c in holdings if avoid.restricts(r, holdings))

    forbidden: Dict[int, ForbiddenSet] = {}
    for robot in sorted(in_formula):
        regions, tasks = set(), set()
        for avoid in conjunct.avoids:
            if not avoid.restricts(robot, holdings):
                continue
            if avoid.skill == mobility_skill:
                regions.add(avoid.region)
            else:
                tasks.add((avoid.skill, avoid.region))
        for predicate in conjunct.negated:
            if predicate.robot != robot:
                continue
            if predicate.skill == mobility_skill:
                regions.add(predicate.region)
            else:
                tasks.add(predicate.task)
        forbidden[robot] = ForbiddenSet(frozenset(regions), frozenset(tasks))

    robots = frozenset(capabilities.robots)
    stranded: Dict[int, Optional[str]] = {}
    if mobility_skill is not None:
        where = stationed or {}
        stranded = {r: where.get(r) for r in robots if not capabilities.has(r, mobility_skill)}
    return AssignmentContext(
        conjunct=conjunct,
        robots_in_formula=frozenset(in_formula),
        busy=busy,
        forbidden=forbidden,
        free=frozenset(r for r in robots if r not in busy),
        robots=robots,
        stranded=stranded,
    )
