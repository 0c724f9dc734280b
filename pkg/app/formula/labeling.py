"""
Labeling - turn team positions and applied skills into a Symbol.
"""
from typing import TYPE_CHECKING, Sequence

from app.errors import SkillNotPossessed
from app.world.grid import Cell, WorldModel

from .predicates import IDLE
from .symbols import Atom, Symbol

if TYPE_CHECKING:
    from app.world.capabilities import CapabilityMatrix


def label(positions: Sequence[Cell], skills: Sequence[int], world: WorldModel,
          capabilities: "CapabilityMatrix") -> Symbol:
    """
    Robots applying a skill on a region cell produce an atom; every robot on a
    region cell is recorded as present there. Off-region skills produce nothing.

    Raises:
        PositionOutOfBounds: a robot is off the grid or on an obstacle
        SkillNotPossessed: a robot applies a skill it does not hold
    """
    if len(positions) != world.robot_count or len(skills) != world.robot_count:
        raise ValueError(f"expected {world.robot_count} positions and skills, "
                         f"got {len(positions)} and {len(skills)}")
    atoms = set()
    presence = set()
    for robot, (cell, skill) in enumerate(zip(positions, skills), start=1):
        world.check_position(cell)
        if skill != IDLE and not capabilities.has(robot, skill):
            raise SkillNotPossessed(f"robot {robot} cannot apply skill {skill}")
        region = world.region_at(cell)
        if region is None:
            continue
        presence.add((robot, region))
        if skill != IDLE:
            atoms.add(Atom(robot, skill, region))
    return Symbol(frozenset(atoms), frozenset(presence), capabilities.holdings(), world.mobility_skill)
