"""
Violation - penalty map, conjunct satisfaction and the per-step violation score.
"""
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

from app.errors import UnknownPredicate

from .guard import Conjunct, GuardDNF
from .predicates import ApplyPredicate, AvoidPredicate, Predicate
from .symbols import Symbol

# Ordered above every finite cost; float addition saturates at it.
INF = math.inf


@dataclass(frozen=True)
class PenaltyMap:
    apply_penalties: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name, value in self.apply_penalties.items():
            if not (0 < value < INF):
                raise ValueError(f"penalty of {name} must be positive and finite, got {value}")

    def __call__(self, predicate: Predicate) -> float:
        if isinstance(predicate, AvoidPredicate):
            return INF
        try:
            return float(self.apply_penalties[predicate.name])
        except KeyError:
            raise UnknownPredicate(f"no penalty declared for {predicate.name}")


def _resolve(predicate: ApplyPredicate, assignment: Optional[Mapping[str, Optional[int]]]) -> ApplyPredicate:
    if assignment is None or predicate.name not in assignment:
        return predicate
    return predicate.with_robot(assignment[predicate.name])


def satisfies(symbol: Symbol, conjunct: Conjunct,
              assignment: Optional[Mapping[str, Optional[int]]] = None) -> bool:
    """
    True iff the symbol enables the conjunct, reading unassigned positive
    literals as true. `assignment` overrides the robot carried by a
    predicate (None = unassigned).
    """
    for predicate in conjunct.positives:
        predicate = _resolve(predicate, assignment)
        if predicate.robot is not None and not symbol.matches(predicate):
            return False
    for predicate in conjunct.negated:
        predicate = _resolve(predicate, assignment)
        if symbol.matches(predicate):
            return False
    return not any(symbol.violates(avoid) for avoid in conjunct.avoids)


def conjunct_violation(symbol: Symbol, conjunct: Conjunct, penalties: PenaltyMap) -> float:
    """Cheapest completion that makes this single conjunct true."""
    if any(symbol.matches(p) for p in conjunct.negated):
        return INF
    if any(symbol.violates(avoid) for avoid in conjunct.avoids):
        return INF
    missing = {p for p in conjunct.positives if not symbol.matches(p)}
    # completing a predicate that is also required false is impossible
    if any(p in conjunct.negated for p in missing):
        return INF
    return sum(penalties(p) for p in missing)


def edge_violation(symbol: Symbol, guard: GuardDNF, penalties: PenaltyMap) -> float:
    if not guard.disjuncts:
        raise ValueError("guard has no disjuncts")
    return min(conjunct_violation(symbol, conjunct, penalties) for conjunct in guard.disjuncts)
