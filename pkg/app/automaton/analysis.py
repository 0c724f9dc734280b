"""
Automaton analysis - pruning, self-loop checks, reachability and failed edges.
"""
import logging
from dataclasses import dataclass, replace
from typing import FrozenSet, List, Tuple

import networkx as nx

from app.formula.guard import GuardDNF
from app.formula.predicates import ApplyPredicate

from .nba import Edge, Nba

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelfLoopIssue:
    state: str
    offending: Tuple[str, ...]  # non-avoid literals found on the loop

    def __str__(self) -> str:
        return f"self-loop on {self.state} carries {', '.join(self.offending)}"


@dataclass(frozen=True)
class FailedEdgeSet:
    predicate: ApplyPredicate
    edges: Tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)


def prune(nba: Nba) -> Nba:
    """Drop conjuncts that ask one robot for two positive predicates; drop emptied transitions."""
    transitions = {}
    for edge, guard in nba.transitions.items():
        kept = tuple(c for c in guard.disjuncts if not c.has_robot_conflict())
        if len(kept) < len(guard.disjuncts):
            logger.debug("prune %s->%s: removed %d conjunct(s)", edge[0], edge[1],
                         len(guard.disjuncts) - len(kept))
        if kept:
            transitions[edge] = GuardDNF(kept)
    return replace(nba, transitions=transitions)


def check_self_loops(nba: Nba) -> List[SelfLoopIssue]:
    """Self-loops must be constant true or built from avoid literals only."""
    issues = []
    for state in nba.states:
        guard = nba.self_loop(state)
        if guard is None or guard.is_true or guard.avoid_only:
            continue
        offending = sorted({str(lit) for c in guard.disjuncts for lit in c.literals if not lit.is_avoid})
        issues.append(SelfLoopIssue(state, tuple(offending)))
    return issues


def reachable_from(nba: Nba, q_cur: str) -> FrozenSet[str]:
    if q_cur not in nba.graph:
        raise KeyError(f"unknown automaton state {q_cur!r}")
    return frozenset(nx.descendants(nba.graph, q_cur)) | {q_cur}


def failed_edges(nba: Nba, q_cur: str, predicate: ApplyPredicate) -> FailedEdgeSet:
    reachable = reachable_from(nba, q_cur)
    edges = tuple(
        edge for edge in nba.edges()
        if edge[0] in reachable and edge[1] in reachable and nba.transitions[edge].mentions(predicate)
    )
    return FailedEdgeSet(predicate, edges)
