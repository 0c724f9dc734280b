"""
Symbols - what the team does at one step, and how predicates read it.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, NamedTuple, Optional, Tuple

from .predicates import ALL, ApplyPredicate, AvoidPredicate


class Atom(NamedTuple):
    robot: int
    skill: int
    region: str


@dataclass(frozen=True)
class Symbol:
    """
    atoms: skills actually applied at region cells this step
    presence: (robot, region) for every robot standing on a region cell
    holdings: (robot, skill) pairs held when the symbol was produced; avoid
        literals quantify over the team of their scope skill through these
    """
    atoms: FrozenSet[Atom] = frozenset()
    presence: FrozenSet[Tuple[int, str]] = frozenset()
    holdings: FrozenSet[Tuple[int, int]] = frozenset()
    mobility_skill: Optional[int] = None

    @classmethod
    def of(cls, atoms: Iterable[Tuple[int, int, str]], holdings: Iterable[Tuple[int, int]] = (),
           mobility_skill: Optional[int] = None,
           presence: Optional[Iterable[Tuple[int, str]]] = None) -> "Symbol":
        atoms = frozenset(Atom(*a) for a in atoms)
        if presence is None:
            presence = {(a.robot, a.region) for a in atoms}
        return cls(atoms, frozenset(presence), frozenset(holdings), mobility_skill)

    def applies(self, robot: int, skill: int, region: str) -> bool:
        if skill == self.mobility_skill:
            return (robot, region) in self.presence
        return Atom(robot, skill, region) in self.atoms

    def matches(self, predicate: ApplyPredicate) -> bool:
        """An unassigned predicate never matches."""
        if predicate.robot is None:
            return False
        return self.applies(predicate.robot, predicate.skill, predicate.region)

    def violates(self, avoid: AvoidPredicate) -> bool:
        if avoid.subject == ALL:
            robots = {r for r, c in self.holdings if c == avoid.scope_skill}
        else:
            robots = {avoid.subject} if (avoid.subject, avoid.scope_skill) in self.holdings else set()
        return any(self.applies(robot, avoid.skill, avoid.region) for robot in robots)

    def __str__(self) -> str:
        if not self.atoms:
            return "{}"
        return "{" + ", ".join(f"(r{a.robot}, c{a.skill}, {a.region})" for a in sorted(self.atoms)) + "}"
