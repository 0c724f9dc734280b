"""
Transitions - realize one automaton transition from a team configuration.

Robots that own a positive literal of the chosen disjunct walk to its region
and apply the skill; every other robot holds its cell, or steps to the nearest
cell the disjunct allows. The walk happens under the current state's
self-loop and the transition fires on the arrival step.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from app.automaton.nba import Edge, Nba
from app.formula.guard import Conjunct
from app.formula.labeling import label
from app.formula.predicates import IDLE
from app.formula.violation import PenaltyMap, conjunct_violation, edge_violation, satisfies
from app.world.capabilities import CapabilityMatrix
from app.world.grid import Cell, WorldModel

from .plan import HybridState
from .travel import TravelPlan, plan_travel

logger = logging.getLogger(__name__)

Positions = Tuple[Cell, ...]


@dataclass(frozen=True)
class LoopOption:
    disjunct: int
    forbidden: Tuple[FrozenSet[Cell], ...]
    step_cost: float


@dataclass(frozen=True)
class Firing:
    """States emitted to realize one transition; the last one fires it."""
    states: Tuple[HybridState, ...]
    positions: Positions
    violation: float
    distance: int

    @property
    def steps(self) -> int:
        return len(self.states)

    @property
    def cost(self) -> Tuple[float, int, int]:
        return (self.violation, self.steps, self.distance)


class TransitionPlanner:
    """
    strict=True: avoid literals and assigned literals are hard constraints and
    self-loops whose disjunct asks for an assigned predicate are unusable for
    waiting (segment synthesis). strict=False: the same geometry, but waiting
    on such a loop is allowed and charged (whole-plan synthesis).
    """

    def __init__(self, nba: Nba, world: WorldModel, capabilities: CapabilityMatrix,
                 penalties: PenaltyMap, strict: bool = False, slack: int = 0):
        self.nba = nba
        self.world = world
        self.capabilities = capabilities
        self.penalties = penalties
        self.strict = strict
        self.holdings = capabilities.holdings()
        self.max_steps = slack or (world.width * world.height + 2)
        robots = range(1, world.robot_count + 1)
        mobility = world.mobility_skill
        self.mobile = tuple(mobility is None or capabilities.has(r, mobility) for r in robots)
        self._loops: Dict[str, List[LoopOption]] = {}

    def forbidden_cells(self, conjunct: Conjunct, robot: int) -> FrozenSet[Cell]:
        """Cells where merely standing (idle) falsifies the conjunct for this robot."""
        mobility = self.world.mobility_skill
        cells = set()
        for avoid in conjunct.avoids:
            if avoid.skill == mobility and avoid.restricts(robot, self.holdings):
                cells.add(self.world.region_cell(avoid.region))
        for predicate in conjunct.negated:
            if predicate.skill == mobility and predicate.robot == robot:
                cells.add(self.world.region_cell(predicate.region))
        return frozenset(cells)

    def loop_options(self, state: str) -> List[LoopOption]:
        if state in self._loops:
            return self._loops[state]
        options = []
        guard = self.nba.self_loop(state)
        if guard is not None:
            for d, conjunct in enumerate(guard.disjuncts):
                assigned = [p for p in conjunct.positives if p.robot is not None]
                if self.strict and assigned:
                    continue
                forbidden = tuple(self.forbidden_cells(conjunct, r)
                                  for r in range(1, self.world.robot_count + 1))
                step_cost = sum(self.penalties(p) for p in conjunct.positives)
                options.append(LoopOption(d, forbidden, step_cost))
        options.sort(key=lambda o: (o.step_cost, o.disjunct))
        self._loops[state] = options
        return options

    def entries(self, positions: Positions, state: str) -> List[Positions]:
        """
        Configurations one step after firing into `state` at `positions`:
        everyone holding still first, then, for each self-loop disjunct, the
        robots standing on a cell it forbids moved to an allowed neighbour.
        """
        found = [tuple(positions)]
        for option in self.loop_options(state):
            choices = []
            for robot, cell in enumerate(positions):
                forbidden = option.forbidden[robot]
                if cell not in forbidden:
                    choices.append([cell])
                elif self.mobile[robot]:
                    choices.append([nxt for nxt in self.world.moves(cell) if nxt not in forbidden])
                else:
                    break
            else:
                for combo in itertools.product(*choices):
                    if combo not in found:
                        found.append(combo)
        return found

    def _nearest_allowed(self, cell: Cell, forbidden: FrozenSet[Cell], mobile: bool) -> Optional[Cell]:
        if cell not in forbidden:
            return cell
        if not mobile:
            return None
        seen = {cell}
        queue = deque([cell])
        while queue:
            here = queue.popleft()
            for nxt in self.world.moves(here):
                if nxt in seen:
                    continue
                if nxt not in forbidden:
                    return nxt
                seen.add(nxt)
                queue.append(nxt)
        return None

    def firing_configuration(self, positions: Positions,
                             conjunct: Conjunct) -> Optional[Tuple[Positions, Tuple[int, ...]]]:
        """Where everybody stands, and what they apply, when the disjunct fires."""
        duties = {p.robot: p for p in conjunct.positives if p.robot is not None}
        cells, skills = [], []
        for robot in range(1, self.world.robot_count + 1):
            duty = duties.get(robot)
            if duty is not None:
                if not self.capabilities.has(robot, duty.skill):
                    return None
                cells.append(self.world.region_cell(duty.region))
                skills.append(duty.skill)
                continue
            cell = self._nearest_allowed(positions[robot - 1], self.forbidden_cells(conjunct, robot),
                                         self.mobile[robot - 1])
            if cell is None:
                return None
            cells.append(cell)
            skills.append(IDLE)
        return tuple(cells), tuple(skills)

    def travel(self, start: Positions, target: Positions, option: Optional[LoopOption],
               fresh: bool) -> Optional[TravelPlan]:
        """
        fresh: the state at `start` has not been emitted yet, so the walk may
        take zero steps and its first state must respect the loop.
        """
        if option is None:
            k = 0 if fresh else 1
            forbidden = tuple(frozenset() for _ in start)
            return plan_travel(self.world, start, target, forbidden, self.mobile, fresh, k, k)
        return plan_travel(self.world, start, target, option.forbidden, self.mobile, fresh,
                           0 if fresh else 1, self.max_steps)

    def _travel_states(self, walk: TravelPlan, state: str, fresh: bool) -> List[HybridState]:
        first = 0 if fresh else 1
        return [HybridState.idle(walk.positions_at(t), state) for t in range(first, walk.steps)]

    def fire(self, positions: Positions, edge: Edge, disjunct: int, fresh: bool) -> Optional[Firing]:
        """Cheapest way to fire `edge` with the given disjunct, or None."""
        guard = self.nba.transitions[edge]
        conjunct = guard.disjuncts[disjunct]
        configuration = self.firing_configuration(positions, conjunct)
        if configuration is None:
            return None
        cells, skills = configuration
        symbol = label(cells, skills, self.world, self.capabilities)
        if not satisfies(symbol, conjunct):
            return None
        violation = edge_violation(symbol, guard, self.penalties)
        if self.strict:
            violation = conjunct_violation(symbol, conjunct, self.penalties)

        source = edge[0]
        options: List[Optional[LoopOption]] = list(self.loop_options(source)) or [None]
        best: Optional[Firing] = None
        for option in options:
            walk = self.travel(positions, cells, option, fresh)
            if walk is None:
                continue
            states = self._travel_states(walk, source, fresh)
            waiting = option.step_cost * len(states) if option is not None else 0.0
            firing = Firing(tuple(states) + (HybridState(cells, skills, source),), cells,
                            violation + waiting, walk.distance)
            if best is None or firing.cost < best.cost:
                best = firing
        return best

    def wait_until(self, positions: Positions, target: Positions, state: str,
                   fresh: bool) -> Optional[Tuple[List[HybridState], float, int]]:
        """
        Walk to `target` under the loop of `state` without firing anything.
        Returns (states strictly before arrival, waiting cost, distance).
        """
        if fresh and tuple(positions) == tuple(target):
            return [], 0.0, 0
        options: List[Optional[LoopOption]] = list(self.loop_options(state)) or [None]
        best = None
        for option in options:
            walk = self.travel(positions, target, option, fresh)
            if walk is None or walk.steps == 0:
                continue
            states = self._travel_states(walk, state, fresh)
            waiting = option.step_cost * len(states) if option is not None else 0.0
            candidate = (states, waiting, walk.distance)
            if best is None or (waiting, len(states), walk.distance) < (best[1], len(best[0]), best[2]):
                best = candidate
        return best
