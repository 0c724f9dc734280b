"""
Exhaustive edge violation - try every set of predicates the step could have
additionally made true.
"""
import itertools
from typing import List

from app.errors import TooLarge
from app.formula.guard import GuardDNF
from app.formula.predicates import AvoidPredicate, LiteralKind
from app.formula.symbols import Symbol
from app.formula.violation import INF, PenaltyMap

PREDICATE_LIMIT = 12


def _holds(symbol: Symbol, predicate) -> bool:
    if isinstance(predicate, AvoidPredicate):
        return not symbol.violates(predicate)
    return symbol.matches(predicate)


def brute_edge_violation(symbol: Symbol, guard: GuardDNF, penalties: PenaltyMap,
                         limit: int = PREDICATE_LIMIT) -> float:
    """
    Raises:
        TooLarge: the guard mentions more than `limit` distinct predicates
    """
    predicates: List = sorted({lit.predicate for c in guard.disjuncts for lit in c.literals},
                              key=lambda p: (p.name, getattr(p, "robot", None) or -1))
    if len(predicates) > limit:
        raise TooLarge(f"guard mentions {len(predicates)} predicates, limit is {limit}")

    baseline = {p: _holds(symbol, p) for p in predicates}
    addable = [p for p in predicates if not baseline[p]]
    best = INF
    for size in range(len(addable) + 1):
        for added in itertools.combinations(addable, size):
            truth = dict(baseline)
            truth.update({p: True for p in added})
            for conjunct in guard.disjuncts:
                ok = all(
                    truth[lit.predicate] if lit.kind is not LiteralKind.NEGATED_APPLY else not truth[lit.predicate]
                    for lit in conjunct.literals
                )
                if ok:
                    cost = sum(INF if isinstance(p, AvoidPredicate) else penalties(p) for p in added)
                    best = min(best, cost)
    return best
