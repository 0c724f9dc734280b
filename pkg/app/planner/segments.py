"""
Segments - corridor-restricted plan pieces used to stitch repaired plans.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

from app.automaton.nba import Nba
from app.errors import SegmentInfeasible
from app.formula.violation import PenaltyMap
from app.world.capabilities import CapabilityMatrix
from app.world.grid import WorldModel

from .plan import HybridState
from .transitions import TransitionPlanner


@dataclass(frozen=True)
class SegmentSpec:
    """
    start: state the segment departs from (it is the segment's first element)
    corridor: automaton states to traverse in order, corridor[0] = start.nba_state
    choices: disjunct index for each corridor transition
    goal: exact state to end on, or None for any state in corridor[-1]
    """
    start: HybridState
    corridor: Tuple[str, ...]
    choices: Tuple[int, ...] = ()
    goal: Optional[HybridState] = None
    unassigned_as_true: bool = True

    def __post_init__(self):
        if not self.corridor or self.corridor[0] != self.start.nba_state:
            raise ValueError("corridor must start at the start state's automaton state")
        if len(self.choices) != len(self.corridor) - 1:
            raise ValueError("one disjunct choice per corridor transition is required")
        if self.goal is not None and self.goal.nba_state != self.corridor[-1]:
            raise ValueError("goal must lie in the last corridor state")


def connect(request: SegmentSpec, nba: Nba, world: WorldModel, capabilities: CapabilityMatrix,
            penalties: PenaltyMap, slack: int = 0) -> List[HybridState]:
    """
    States from request.start to the goal, both included, following the corridor.
    Avoid literals and assigned predicates are never violated on the way.

    Raises:
        SegmentInfeasible: a corridor transition or the final approach is not realizable
    """
    planner = TransitionPlanner(nba, world, capabilities, penalties, strict=True, slack=slack)
    positions = request.start.positions
    fresh = True
    states: List[HybridState] = []

    for m, disjunct in enumerate(request.choices):
        edge = (request.corridor[m], request.corridor[m + 1])
        guard = nba.guard(*edge)
        if guard is None or disjunct >= len(guard.disjuncts):
            raise SegmentInfeasible(f"corridor transition {edge[0]}->{edge[1]} (disjunct {disjunct}) does not exist")
        firing = planner.fire(positions, edge, disjunct, fresh)
        if firing is None:
            raise SegmentInfeasible(f"cannot realize {edge[0]}->{edge[1]} (disjunct {disjunct}) from {positions}")
        states.extend(firing.states)
        positions, fresh = firing.positions, False

    last = request.corridor[-1]
    if request.goal is None:
        if fresh:
            return [request.start]
        states.append(HybridState.idle(positions, last))
        return states

    approach = planner.wait_until(positions, request.goal.positions, last, fresh)
    if approach is None:
        raise SegmentInfeasible(f"cannot reach {request.goal.positions} while in {last}")
    states.extend(approach[0])
    states.append(request.goal)
    return states
