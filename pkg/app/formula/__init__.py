"""
Formula core - predicates, DNF guards, symbols and violation scores.
"""
from .predicates import ALL, IDLE, ApplyPredicate, AvoidPredicate, Literal, LiteralKind, parse_literal
from .guard import Conjunct, GuardDNF, guard_from_dnf
from .symbols import Atom, Symbol
from .violation import INF, PenaltyMap, conjunct_violation, edge_violation, satisfies
from .labeling import label

__all__ = [
    "ALL", "IDLE", "ApplyPredicate", "AvoidPredicate", "Literal", "LiteralKind", "parse_literal",
    "Conjunct", "GuardDNF", "guard_from_dnf",
    "Atom", "Symbol",
    "INF", "PenaltyMap", "conjunct_violation", "edge_violation", "satisfies",
    "label",
]
