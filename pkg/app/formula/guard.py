"""
Guards - transition conditions stored in disjunctive normal form.
"""
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .predicates import ApplyPredicate, AvoidPredicate, Literal, LiteralKind


@dataclass(frozen=True)
class Conjunct:
    """A conjunction of literals. The empty conjunct is the constant true."""
    literals: Tuple[Literal, ...] = ()

    @classmethod
    def of(cls, literals: Iterable[Literal]) -> "Conjunct":
        unique = {lit.sort_key: lit for lit in literals}
        return cls(tuple(unique[key] for key in sorted(unique)))

    @property
    def is_true(self) -> bool:
        return not self.literals

    @property
    def positives(self) -> List[ApplyPredicate]:
        return [lit.predicate for lit in self.literals if lit.kind is LiteralKind.POSITIVE_APPLY]

    @property
    def negated(self) -> List[ApplyPredicate]:
        return [lit.predicate for lit in self.literals if lit.kind is LiteralKind.NEGATED_APPLY]

    @property
    def avoids(self) -> List[AvoidPredicate]:
        return [lit.predicate for lit in self.literals if lit.kind is LiteralKind.AVOID]

    @property
    def avoid_only(self) -> bool:
        return all(lit.kind is LiteralKind.AVOID for lit in self.literals)

    def contains_positive(self, predicate: ApplyPredicate) -> bool:
        return any(p == predicate for p in self.positives)

    def mentions(self, predicate: ApplyPredicate) -> bool:
        return any(lit.predicate == predicate for lit in self.literals)

    def assigned_robots(self) -> List[int]:
        return [p.robot for p in self.positives if p.robot is not None]

    def has_robot_conflict(self) -> bool:
        """True if one robot must satisfy two distinct positive predicates."""
        robots = self.assigned_robots()
        return len(robots) != len(set(robots))

    def replace_predicate(self, old: ApplyPredicate, new: ApplyPredicate,
                          kind: LiteralKind = LiteralKind.POSITIVE_APPLY) -> "Conjunct":
        return Conjunct.of(
            lit.with_predicate(new) if lit.kind is kind and lit.predicate == old else lit
            for lit in self.literals
        )

    def __str__(self) -> str:
        if self.is_true:
            return "true"
        return " & ".join(str(lit) for lit in self.literals)


@dataclass(frozen=True)
class GuardDNF:
    disjuncts: Tuple[Conjunct, ...]

    @classmethod
    def true(cls) -> "GuardDNF":
        return cls((Conjunct(),))

    @property
    def is_true(self) -> bool:
        return any(c.is_true for c in self.disjuncts)

    @property
    def avoid_only(self) -> bool:
        return all(c.avoid_only for c in self.disjuncts)

    def predicates(self) -> List:
        """Distinct predicates in first-occurrence order."""
        seen = {}
        for conjunct in self.disjuncts:
            for lit in conjunct.literals:
                seen.setdefault(lit.predicate, None)
        return list(seen)

    def mentions(self, predicate: ApplyPredicate) -> bool:
        return any(c.mentions(predicate) for c in self.disjuncts)

    def disjunct(self, index: int) -> Conjunct:
        return self.disjuncts[index]

    def with_disjunct(self, index: int, conjunct: Conjunct) -> "GuardDNF":
        items = list(self.disjuncts)
        items[index] = conjunct
        return GuardDNF(tuple(items))

    def __str__(self) -> str:
        return " | ".join(f"({c})" for c in self.disjuncts)


def guard_from_dnf(dnf: Iterable[Iterable[Literal]]) -> GuardDNF:
    return GuardDNF(tuple(Conjunct.of(conj) for conj in dnf))


def unassigned_in(conjunct: Conjunct) -> List[ApplyPredicate]:
    return [p for p in conjunct.positives if p.robot is None]

