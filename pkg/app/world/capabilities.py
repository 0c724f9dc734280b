"""
Capabilities - which robot holds which skill, and what a failure takes away.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from app.errors import ScenarioError
from app.formula.predicates import ALL, IDLE, ApplyPredicate

logger = logging.getLogger(__name__)

Loss = Tuple[int, Union[int, str]]  # (robot, skill) or (robot, ALL)


class CapabilityMatrix:
    """
    Robots x skills bit matrix. Row j-1 is robot j, column c-1 is skill c.
    Bits only ever go from 1 to 0.
    """

    def __init__(self, bits: np.ndarray):
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ScenarioError("capability matrix must be two-dimensional")
        if not np.isin(bits, (0, 1)).all():
            raise ScenarioError("capability matrix entries must be 0 or 1")
        self._bits = bits.copy()
        self._bits.setflags(write=False)
        rows, cols = np.nonzero(self._bits)
        self._holdings = frozenset((int(r) + 1, int(c) + 1) for r, c in zip(rows, cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "CapabilityMatrix":
        return cls(np.array(rows, dtype=np.uint8))

    @classmethod
    def from_skills(cls, robot_count: int, skill_count: int,
                    skills: Mapping[int, Iterable[int]]) -> "CapabilityMatrix":
        bits = np.zeros((robot_count, skill_count), dtype=np.uint8)
        for robot, held in skills.items():
            for skill in held:
                if not (1 <= robot <= robot_count and 1 <= skill <= skill_count):
                    raise ScenarioError(f"robot {robot} / skill {skill} out of range")
                bits[robot - 1, skill - 1] = 1
        return cls(bits)

    @property
    def robot_count(self) -> int:
        return self._bits.shape[0]

    @property
    def skill_count(self) -> int:
        return self._bits.shape[1]

    @property
    def robots(self) -> range:
        return range(1, self.robot_count + 1)

    def has(self, robot: int, skill: int) -> bool:
        if skill == IDLE:
            return True
        if not (1 <= robot <= self.robot_count and 1 <= skill <= self.skill_count):
            return False
        return bool(self._bits[robot - 1, skill - 1])

    def team(self, skill: int) -> FrozenSet[int]:
        return frozenset(int(r) + 1 for r in np.flatnonzero(self._bits[:, skill - 1]))

    def skills_of(self, robot: int) -> FrozenSet[int]:
        return frozenset(int(c) + 1 for c in np.flatnonzero(self._bits[robot - 1]))

    def holdings(self) -> FrozenSet[Tuple[int, int]]:
        return self._holdings

    def to_rows(self) -> list:
        return self._bits.tolist()

    def without(self, losses: Iterable[Loss]) -> "CapabilityMatrix":
        bits = self._bits.copy()
        for robot, skill in losses:
            if not 1 <= robot <= self.robot_count:
                raise ScenarioError(f"failure names unknown robot {robot}")
            if skill == ALL:
                bits[robot - 1, :] = 0
            elif 1 <= skill <= self.skill_count:
                bits[robot - 1, skill - 1] = 0
            else:
                raise ScenarioError(f"failure names unknown skill {skill}")
        return CapabilityMatrix(bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, CapabilityMatrix) and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __repr__(self) -> str:
        return f"CapabilityMatrix({self.to_rows()})"


def teams(z: CapabilityMatrix) -> Dict[int, FrozenSet[int]]:
    """Skill -> robots currently holding it, for every skill 1..C."""
    return {skill: z.team(skill) for skill in range(1, z.skill_count + 1)}


@dataclass(frozen=True)
class FailureEvent:
    time: int
    losses: Tuple[Loss, ...]

    def __post_init__(self):
        if self.time < 0:
            raise ScenarioError(f"failure time must be non-negative, got {self.time}")
        object.__setattr__(self, "losses", tuple(tuple(loss) for loss in self.losses))

    def to_dict(self) -> dict:
        return {"time": self.time, "losses": [list(loss) for loss in self.losses]}


def apply_failure(z: CapabilityMatrix, ev: FailureEvent, assignment: Iterable[ApplyPredicate],
                  mobility_skill: Optional[int] = None) -> Tuple[CapabilityMatrix, FrozenSet[ApplyPredicate]]:
    """
    Clear the lost bits and collect the assigned predicates that broke.

    Args:
        z: capabilities before the event
        ev: the failure event
        assignment: predicates currently assigned to robots (unassigned ones are ignored)
        mobility_skill: a robot without it can no longer reach any region, so
            every predicate assigned to it fails as well

    Returns:
        (new capability matrix, failed predicates)
    """
    z_next = z.without(ev.losses)
    failed = set()
    for predicate in assignment:
        if predicate.robot is None:
            continue
        if not z_next.has(predicate.robot, predicate.skill):
            failed.add(predicate)
        elif mobility_skill is not None and not z_next.has(predicate.robot, mobility_skill):
            failed.add(predicate)
    logger.info("failure at t=%d: losses=%s failed=%s", ev.time, list(ev.losses),
                sorted(p.name for p in failed))
    return z_next, frozenset(failed)
