"""
Reassignment baselines - exhaustive hand-over chains and a one-shot
Hungarian assignment of every task in a conjunct.
"""
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from app.errors import TooLarge
from app.formula.guard import Conjunct
from app.formula.predicates import ApplyPredicate
from app.formula.violation import PenaltyMap
from app.reallocation.context import AssignmentContext
from app.world.capabilities import CapabilityMatrix

ROBOT_LIMIT = 8


def _blocked(conjunct: Conjunct, robot: int, task: ApplyPredicate, holdings, mobility_skill: Optional[int]) -> bool:
    def hits(skill: int, region: str) -> bool:
        if region != task.region:
            return False
        return skill == mobility_skill or skill == task.skill

    for avoid in conjunct.avoids:
        if avoid.restricts(robot, holdings) and hits(avoid.skill, avoid.region):
            return True
    return any(p.robot == robot and hits(p.skill, p.region) for p in conjunct.negated)


def _stranded(robot: int, task: ApplyPredicate, holdings, mobility_skill: Optional[int],
              stationed: Mapping[int, Optional[str]]) -> bool:
    if mobility_skill is None or (robot, mobility_skill) in holdings:
        return False
    return stationed.get(robot) != task.region


def brute_reassign(ctx: AssignmentContext, failed: ApplyPredicate, teams: Mapping[int, FrozenSet[int]],
                   penalties: PenaltyMap, limit: int = ROBOT_LIMIT, mobility_skill: Optional[int] = 1,
                   stationed: Optional[Mapping[int, Optional[str]]] = None) -> Tuple[float, int]:
    """
    Minimum (cost, hops) over every simple hand-over chain starting at the
    failed robot. Giving up the failed predicate itself is (F(failed), 0).
    Only the conjunct and robot set are read from `ctx`; who may take which
    task is worked out again from the literals and `teams`.

    Raises:
        TooLarge: more than `limit` robots
    """
    if len(ctx.robots) > limit:
        raise TooLarge(f"{len(ctx.robots)} robots, limit is {limit}")
    conjunct = ctx.conjunct
    holdings = frozenset((robot, skill) for skill, team in teams.items() for robot in team)
    where = stationed or {}
    busy = {p.robot: p for p in conjunct.positives if p.robot is not None and p != failed}
    root = failed.robot
    best = (penalties(failed), 0)

    def refuses(robot: int, task: ApplyPredicate) -> bool:
        return (_stranded(robot, task, holdings, mobility_skill, where)
                or _blocked(conjunct, robot, task, holdings, mobility_skill))

    def walk(path: List[int], task: ApplyPredicate) -> None:
        nonlocal best
        current = path[-1]
        for candidate in sorted(teams.get(task.skill, ())):
            if candidate == current or refuses(candidate, task):
                continue
            if candidate not in busy:
                if candidate == root or candidate not in path:
                    best = min(best, (0.0, len(path)))
                continue
            if candidate in path:
                continue
            held = busy[candidate]
            best = min(best, (penalties(held), len(path)))
            walk(path + [candidate], held)

    walk([root], failed)
    return best


def hungarian_reassign(conjunct: Conjunct, capabilities: CapabilityMatrix, penalties: PenaltyMap,
                       mobility_skill: Optional[int] = 1, stationed: Optional[Mapping[int, Optional[str]]] = None
                       ) -> Tuple[float, int, Dict[str, Optional[int]]]:
    """
    Assign every assigned positive predicate of the conjunct from scratch.
    Each task also gets a private dummy column priced at its own penalty, so
    when robots run short the cheapest tasks are the ones dropped. A robot
    without mobility only gets tasks on the region `stationed` puts it on.

    Returns:
        (violation, number of tasks whose robot changed, name -> robot or None)
    """
    tasks = [p for p in conjunct.positives if p.robot is not None]
    robots = list(capabilities.robots)
    if not tasks:
        return 0.0, 0, {}
    holdings = capabilities.holdings()
    where = stationed or {}
    big = sum(penalties(t) for t in tasks) + 1.0
    cost = np.full((len(tasks), len(robots) + len(tasks)), big)
    for i, task in enumerate(tasks):
        for j, robot in enumerate(robots):
            if not capabilities.has(robot, task.skill) or _blocked(conjunct, robot, task, holdings, mobility_skill):
                continue
            if _stranded(robot, task, holdings, mobility_skill, where):
                continue
            cost[i, j] = 0.0
        cost[i, len(robots) + i] = penalties(task)

    rows, cols = linear_sum_assignment(cost)
    violation, changed = 0.0, 0
    assignment: Dict[str, Optional[int]] = {}
    for i, j in zip(rows, cols):
        task = tasks[i]
        if j >= len(robots):
            violation += penalties(task)
            assignment[task.name] = None
            continue
        assignment[task.name] = robots[j]
        if robots[j] != task.robot:
            changed += 1
    return violation, changed, assignment
