"""
Search - optimal prefix-suffix plans by uniform-cost search over firing
configurations of the team crossed with automaton states.

Costs are compared lexicographically as (violation, steps, distance).
"""
import heapq
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from app.automaton.nba import Nba
from app.errors import Infeasible
from app.formula.violation import INF, PenaltyMap
from app.world.capabilities import CapabilityMatrix
from app.world.grid import Cell, WorldModel, manhattan

from .plan import HybridPlan, HybridState, minimal_cycle, plan_violation
from .transitions import Positions, TransitionPlanner

logger = logging.getLogger(__name__)

Cost = Tuple[float, int, int]
Node = Tuple[Positions, str, bool]  # (positions, automaton state, fresh)
ZERO: Cost = (0.0, 0, 0)
GOAL = ("goal",)


def _add(a: Cost, b: Cost) -> Cost:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _unwind(parents: Dict, node) -> List[HybridState]:
    segments = []
    while parents.get(node) is not None:
        node, states = parents[node]
        segments.append(states)
    return [s for segment in reversed(segments) for s in segment]


class _Search:
    def __init__(self, planner: TransitionPlanner):
        self.planner = planner
        self.nba = planner.nba
        self._suffixes: Dict[Tuple[Positions, str], Optional[Tuple[Cost, Tuple[HybridState, ...]]]] = {}

    def expansions(self, node: Node, allow_self_loop: bool):
        positions, state, fresh = node
        for target in self.nba.successors(state):
            if target == state and not allow_self_loop:
                continue
            edge = (state, target)
            for d in range(len(self.nba.transitions[edge].disjuncts)):
                firing = self.planner.fire(positions, edge, d, fresh)
                if firing is None or firing.violation == INF:
                    continue
                yield (firing.positions, target, False), firing.cost, firing.states

    def suffix(self, positions: Positions, accepting: str) -> Optional[Tuple[Cost, Tuple[HybridState, ...]]]:
        """Cheapest cycle that starts (unemitted) at `positions` in `accepting` and returns there."""
        key = (positions, accepting)
        if key in self._suffixes:
            return self._suffixes[key]

        start: Node = (positions, accepting, True)
        best: Dict = {start: ZERO}
        parents: Dict = {start: None}
        counter = itertools.count()
        heap = [(ZERO, next(counter), start)]
        result = None
        while heap:
            cost, _, node = heapq.heappop(heap)
            if node == GOAL:
                result = (cost, minimal_cycle(_unwind(parents, GOAL)))
                break
            if cost > best.get(node, cost):
                continue
            successors = list(self.expansions(node, allow_self_loop=True))
            here, state, fresh = node
            if state == accepting and not fresh:
                closing = self.planner.wait_until(here, positions, state, fresh=False)
                if closing is not None:
                    states, waiting, distance = closing
                    successors.append((GOAL, (waiting, len(states), distance), tuple(states)))
            for nxt, step_cost, states in successors:
                total = _add(cost, step_cost)
                if nxt not in best or total < best[nxt]:
                    best[nxt] = total
                    parents[nxt] = (node, states)
                    heapq.heappush(heap, (total, next(counter), nxt))
        self._suffixes[key] = result
        return result

    def run(self, sources: Iterable[Node]) -> Optional[Tuple[Cost, List[HybridState], Tuple[HybridState, ...]]]:
        best: Dict = {}
        parents: Dict = {}
        counter = itertools.count()
        heap = []
        for source in sources:
            best[source] = ZERO
            parents[source] = None
            heap.append((ZERO, next(counter), source))
        heapq.heapify(heap)

        winner = None
        while heap:
            cost, _, node = heapq.heappop(heap)
            if winner is not None and cost >= winner[0]:
                break
            if cost > best.get(node, cost):
                continue
            positions, state, fresh = node
            if state in self.nba.accepting and (not fresh or parents[node] is None):
                # after a firing the cycle may begin one step away, off a cell the loop forbids
                entries = [positions] if fresh else self.planner.entries(positions, state)
                for entry in entries:
                    cycle = self.suffix(entry, state)
                    if cycle is None:
                        continue
                    shift = sum(manhattan(a, b) for a, b in zip(positions, entry))
                    total = _add(_add(cost, cycle[0]), (0.0, 0, shift))
                    if winner is None or total < winner[0]:
                        winner = (total, _unwind(parents, node), cycle[1])
            for nxt, step_cost, states in self.expansions(node, allow_self_loop=False):
                total = _add(cost, step_cost)
                if nxt not in best or total < best[nxt]:
                    best[nxt] = total
                    parents[nxt] = (node, states)
                    heapq.heappush(heap, (total, next(counter), nxt))
        return winner


def synthesize(nba: Nba, world: WorldModel, start: Iterable[Cell], capabilities: CapabilityMatrix,
               penalties: PenaltyMap, initial: Optional[Iterable[str]] = None, slack: int = 0) -> HybridPlan:
    """
    Minimum-violation plan from the given team configuration; among those the
    fewest steps, then the shortest total travel.

    Args:
        start: per-robot start cells
        initial: automaton states to start from (default: the automaton's initial states)

    Raises:
        Infeasible: no accepting run can be realized
    """
    positions = tuple(tuple(c) for c in start)
    for cell in positions:
        world.check_position(cell)
    planner = TransitionPlanner(nba, world, capabilities, penalties, strict=False, slack=slack)
    sources = [(positions, q, True) for q in sorted(initial if initial is not None else nba.initial)]
    found = _Search(planner).run(sources)
    if found is None:
        raise Infeasible("no accepting run is realizable from the given configuration")
    cost, prefix, suffix = found
    plan = HybridPlan(tuple(prefix), tuple(suffix))
    violation = plan_violation(plan, 0, nba, penalties, world, capabilities)
    logger.info("synthesized plan: T=%d K=%d violation=%s distance=%d",
                plan.T, plan.K, violation, cost[2])
    return plan.with_violation(violation)
