"""
Grid - the 8-connected workspace robots move in.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from scipy import ndimage

from app.errors import IllegalMove, PositionOutOfBounds, ScenarioError

Cell = Tuple[int, int]

EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


class Primitive(Enum):
    """Holonomic motion primitives. N is +y, E is +x."""
    STAY = (0, 0)
    N = (0, 1)
    S = (0, -1)
    E = (1, 0)
    W = (-1, 0)
    NE = (1, 1)
    NW = (-1, 1)
    SE = (1, -1)
    SW = (-1, -1)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]


def manhattan(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass(eq=False)
class WorldModel:
    """
    Grid world with obstacles and named regions.
    Robots are numbered 1..robot_count, skills 1..skill_count.
    """
    width: int
    height: int
    obstacles: FrozenSet[Cell] = frozenset()
    regions: Dict[str, Cell] = field(default_factory=dict)
    robot_count: int = 1
    skill_count: int = 1
    mobility_skill: Optional[int] = 1
    free_mask: np.ndarray = field(init=False, repr=False)
    _region_by_cell: Dict[Cell, str] = field(init=False, repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ScenarioError(f"grid must be at least 1x1, got {self.width}x{self.height}")
        if self.robot_count < 1:
            raise ScenarioError("a world needs at least one robot")
        self.obstacles = frozenset(tuple(c) for c in self.obstacles)
        self.regions = {name: tuple(cell) for name, cell in self.regions.items()}

        self.free_mask = np.ones((self.width, self.height), dtype=bool)
        for x, y in self.obstacles:
            if self.in_bounds((x, y)):
                self.free_mask[x, y] = False

        self._region_by_cell = {}
        for name, cell in sorted(self.regions.items()):
            if not self.in_bounds(cell):
                raise ScenarioError(f"region {name} at {cell} is outside the grid")
            if not self.free_mask[cell]:
                raise ScenarioError(f"region {name} at {cell} is an obstacle")
            if cell in self._region_by_cell:
                raise ScenarioError(f"regions {self._region_by_cell[cell]} and {name} share cell {cell}")
            self._region_by_cell[cell] = name

    def in_bounds(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def is_free(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and bool(self.free_mask[cell])

    def check_position(self, cell: Cell) -> None:
        if not self.is_free(cell):
            raise PositionOutOfBounds(f"cell {cell} is outside the grid or blocked")

    def region_at(self, cell: Cell) -> Optional[str]:
        return self._region_by_cell.get(tuple(cell))

    def region_cell(self, name: str) -> Cell:
        try:
            return self.regions[name]
        except KeyError:
            raise ScenarioError(f"unknown region {name!r}")

    def step(self, cell: Cell, primitive: Primitive) -> Cell:
        target = (cell[0] + primitive.dx, cell[1] + primitive.dy)
        if not self.is_free(target):
            raise IllegalMove(f"{primitive.name} from {cell} leads to {target}, which is blocked")
        return target

    def moves(self, cell: Cell) -> List[Cell]:
        """Legal successor cells, stay included, in primitive order."""
        result = []
        for primitive in Primitive:
            target = (cell[0] + primitive.dx, cell[1] + primitive.dy)
            if self.is_free(target):
                result.append(target)
        return result

    def free_cells(self) -> List[Cell]:
        xs, ys = np.nonzero(self.free_mask)
        return [(int(x), int(y)) for x, y in zip(xs, ys)]

    def connected(self, cells: Iterable[Cell]) -> bool:
        """True if all given cells lie in one 8-connected free component."""
        labels, _ = ndimage.label(self.free_mask, structure=EIGHT_CONNECTED)
        seen = {int(labels[cell]) for cell in cells if self.is_free(cell)}
        return len(seen) <= 1 and all(self.is_free(cell) for cell in cells)
