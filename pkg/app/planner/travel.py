"""
Travel - exact-duration walks for every robot at once.

All robots move synchronously for exactly k steps. The cells a robot visits
strictly between departure and arrival must avoid its forbidden set; the
departure cell is checked too when it starts a fresh stretch of the plan.
Among feasible walks the total Manhattan length is minimized.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from app.world.grid import EIGHT_CONNECTED, Cell, WorldModel, manhattan


@dataclass(frozen=True)
class TravelPlan:
    steps: int
    paths: Tuple[Tuple[Cell, ...], ...]  # per robot, steps + 1 cells
    distance: int

    def positions_at(self, t: int) -> Tuple[Cell, ...]:
        return tuple(path[t] for path in self.paths)


class _RobotLayers:
    """Forward reachability layers of one robot under its forbidden cells."""

    def __init__(self, world: WorldModel, start: Cell, forbidden: FrozenSet[Cell], mobile: bool,
                 check_start: bool):
        self.world = world
        self.start = start
        self.mobile = mobile
        self.allowed = world.free_mask.copy()
        for cell in forbidden:
            if world.in_bounds(cell):
                self.allowed[cell] = False
        origin = np.zeros_like(world.free_mask)
        origin[start] = True
        # a fresh stretch whose first state is forbidden can only fire at once
        self.start_ok = not check_start or bool(self.allowed[start])
        self.layers: List[np.ndarray] = [origin]

    def _expand(self, mask: np.ndarray) -> np.ndarray:
        if not self.mobile:
            return mask.copy()
        return ndimage.binary_dilation(mask, structure=EIGHT_CONNECTED)

    def layer(self, t: int) -> np.ndarray:
        """Cells the robot may occupy at intermediate time t (t >= 0)."""
        while len(self.layers) <= t:
            self.layers.append(self._expand(self.layers[-1]) & self.allowed)
        return self.layers[t]

    def can_arrive(self, target: Cell, k: int) -> bool:
        if k == 0:
            return target == self.start
        if not self.start_ok:
            return False
        return bool((self._expand(self.layer(k - 1)) & self.world.free_mask)[target])

    def walk(self, target: Cell, k: int) -> Tuple[Tuple[Cell, ...], int]:
        """Minimum-length walk of exactly k steps (assumes can_arrive)."""
        if k == 0:
            return (self.start,), 0
        # backward pass: cells that can still reach the target in time
        backward: List[set] = [set() for _ in range(k + 1)]
        backward[k] = {target}
        for t in range(k - 1, -1, -1):
            layer = self.layer(t)
            backward[t] = {
                cell for nxt in backward[t + 1] for cell in self._neighbours(nxt)
                if layer[cell]
            }
        # distance-to-go over the backward sets
        cost: Dict[Tuple[int, Cell], int] = {(k, target): 0}
        for t in range(k - 1, -1, -1):
            for cell in backward[t]:
                options = [manhattan(cell, nxt) + cost[(t + 1, nxt)]
                           for nxt in self._neighbours(cell) if nxt in backward[t + 1]]
                cost[(t, cell)] = min(options)
        path = [self.start]
        for t in range(k):
            here = path[-1]
            best = min((nxt for nxt in self._neighbours(here) if nxt in backward[t + 1]),
                       key=lambda nxt: manhattan(here, nxt) + cost[(t + 1, nxt)])
            path.append(best)
        return tuple(path), cost[(0, self.start)]

    def _neighbours(self, cell: Cell) -> List[Cell]:
        if not self.mobile:
            return [cell]
        return self.world.moves(cell)


def plan_travel(world: WorldModel, starts: Sequence[Cell], targets: Sequence[Cell],
                forbidden: Sequence[FrozenSet[Cell]], mobile: Sequence[bool], check_start: bool,
                min_steps: int, max_steps: int) -> Optional[TravelPlan]:
    """
    Smallest k in [min_steps, max_steps] for which every robot can walk from its
    start to its target in exactly k steps, then the shortest such walks.
    Returns None when no k in range works.
    """
    robots = [
        _RobotLayers(world, tuple(s), forbidden[i], mobile[i], check_start)
        for i, s in enumerate(starts)
    ]
    targets = [tuple(t) for t in targets]
    for k in range(min_steps, max_steps + 1):
        if all(robot.can_arrive(target, k) for robot, target in zip(robots, targets)):
            walks = [robot.walk(target, k) for robot, target in zip(robots, targets)]
            return TravelPlan(k, tuple(w[0] for w in walks), sum(w[1] for w in walks))
    return None
