"""
Predicates - apply/avoid skill predicates and the literals that reference them.
"""
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping, Optional, Tuple, Union

from app.errors import ScenarioError, UnknownPredicate

IDLE = 0
ALL = "all"

Task = Tuple[int, str]  # (skill, region)


@dataclass(frozen=True)
class ApplyPredicate:
    """Robot `robot` applies `skill` at `region`. robot=None means unassigned."""
    name: str
    skill: int
    robot: Optional[int]
    region: str

    def __post_init__(self):
        if self.skill == IDLE:
            raise ScenarioError(f"apply predicate {self.name} uses the idle skill")

    @property
    def task(self) -> Task:
        return (self.skill, self.region)

    @property
    def assigned(self) -> bool:
        return self.robot is not None

    def with_robot(self, robot: Optional[int]) -> "ApplyPredicate":
        return replace(self, robot=robot)

    def __str__(self) -> str:
        who = "?" if self.robot is None else self.robot
        return f"{self.name}(c{self.skill}, r{who}, {self.region})"


@dataclass(frozen=True)
class AvoidPredicate:
    """
    Robots of team `scope_skill` (all of them, or only `subject`) must not
    apply `skill` at `region`. With the mobility skill this means: must not
    stand on the region's cell at all.
    """
    name: str
    scope_skill: int
    subject: Union[int, str]
    skill: int
    region: str

    def restricts(self, robot: int, holdings) -> bool:
        """True if `robot` is bound by this predicate given (robot, skill) holdings."""
        if self.subject != ALL and self.subject != robot:
            return False
        return (robot, self.scope_skill) in holdings

    def __str__(self) -> str:
        return f"{self.name}(team c{self.scope_skill}, {self.subject}, c{self.skill}, {self.region})"


Predicate = Union[ApplyPredicate, AvoidPredicate]


class LiteralKind(Enum):
    POSITIVE_APPLY = "pi"
    NEGATED_APPLY = "!pi"
    AVOID = "npi"


@dataclass(frozen=True)
class Literal:
    kind: LiteralKind
    predicate: Predicate

    @property
    def is_positive(self) -> bool:
        return self.kind is LiteralKind.POSITIVE_APPLY

    @property
    def is_negated(self) -> bool:
        return self.kind is LiteralKind.NEGATED_APPLY

    @property
    def is_avoid(self) -> bool:
        return self.kind is LiteralKind.AVOID

    def with_predicate(self, predicate: Predicate) -> "Literal":
        return replace(self, predicate=predicate)

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.predicate.name}"

    @property
    def sort_key(self) -> Tuple[str, str, int]:
        robot = getattr(self.predicate, "robot", None)
        return (self.kind.value, self.predicate.name, -1 if robot is None else robot)


def parse_literal(text: str, predicates: Mapping[str, Predicate]) -> Literal:
    """
    Parse "pi:<name>", "!pi:<name>" or "npi:<name>" against a predicate table.

    Raises:
        UnknownPredicate: name not declared
        ScenarioError: malformed literal, or kind does not match the predicate
    """
    prefix, sep, name = text.strip().partition(":")
    if not sep or not name:
        raise ScenarioError(f"malformed literal {text!r}")
    try:
        kind = LiteralKind(prefix)
    except ValueError:
        raise ScenarioError(f"unknown literal prefix in {text!r} (negated avoid literals are not allowed)")

    predicate = predicates.get(name)
    if predicate is None:
        raise UnknownPredicate(f"literal {text!r} references undeclared predicate {name!r}")

    if kind is LiteralKind.AVOID and not isinstance(predicate, AvoidPredicate):
        raise ScenarioError(f"{text!r}: {name} is an apply predicate, use pi:/!pi:")
    if kind is not LiteralKind.AVOID and not isinstance(predicate, ApplyPredicate):
        raise ScenarioError(f"{text!r}: {name} is an avoid predicate, use npi:")
    return Literal(kind, predicate)
