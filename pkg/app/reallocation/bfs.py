"""
BFS reassignment - shortest chain of task hand-overs that repairs one failed
predicate, or failing that, the cheapest predicate to give up.
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from app.errors import NoCandidate
from app.formula.predicates import ApplyPredicate
from app.formula.violation import PenaltyMap

from .context import AssignmentContext


@dataclass(frozen=True)
class ReassignPath:
    """robots[k + 1] takes over the task robots[k] held (robots[0] held the failed one)."""
    robots: Tuple[int, ...]
    cost: float
    sacrificed: Optional[ApplyPredicate]

    @property
    def hops(self) -> int:
        return len(self.robots) - 1


def _trace(parent: Dict[int, int], node: int, root: int) -> Tuple[int, ...]:
    path = [node]
    current = node
    while True:
        current = parent[current]
        path.append(current)
        if current == root:
            break
    return tuple(reversed(path))


def bfs_reassign(ctx: AssignmentContext, failed: ApplyPredicate, teams: Mapping[int, FrozenSet[int]],
                 penalties: PenaltyMap) -> ReassignPath:
    """
    Breadth-first over robots; a robot may hand its task to a teammate of the
    task's skill unless the task is forbidden to that teammate. The root is not
    marked explored up front, so it can come back as a free terminal.

    Raises:
        NoCandidate: nothing beats giving up the failed predicate itself
    """
    root = failed.robot
    parent: Dict[int, int] = {}
    explored = set()
    queue = deque([root])
    best, best_penalty = root, penalties(failed)
    first = True

    while queue:
        current = queue.popleft()
        if current in ctx.free and not first:
            return ReassignPath(_trace(parent, current, root), 0.0, None)
        task = failed if first else ctx.busy[current]
        first = False

        for candidate in sorted(teams.get(task.skill, ())):
            if candidate == current or candidate in explored:
                continue
            if ctx.blocks(candidate, task.task):
                continue
            explored.add(candidate)
            parent[candidate] = current
            queue.append(candidate)
            held = ctx.busy.get(candidate)
            if held is not None and penalties(held) < best_penalty:
                best, best_penalty = candidate, penalties(held)

    if best == root:
        raise NoCandidate(f"no reassignment beats dropping {failed.name}")
    return ReassignPath(_trace(parent, best, root), best_penalty, ctx.busy[best])


def hand_overs(path: ReassignPath, failed: ApplyPredicate,
               ctx: AssignmentContext) -> List[Tuple[ApplyPredicate, Optional[int]]]:
    """(predicate, new robot) pairs the path implies; a sacrificed predicate gets None."""
    moves = []
    for k in range(path.hops):
        task = failed if k == 0 else ctx.busy[path.robots[k]]
        moves.append((task, path.robots[k + 1]))
    if path.sacrificed is not None:
        moves.append((path.sacrificed, None))
    return moves
