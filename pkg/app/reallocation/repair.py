"""
Repair - reallocate every failed predicate on every reachable transition and
rewrite the automaton's guards accordingly.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from app.automaton.analysis import failed_edges
from app.automaton.nba import Edge, Nba
from app.automaton.sequences import DisjunctKey
from app.errors import NoCandidate
from app.formula.guard import Conjunct
from app.formula.predicates import ApplyPredicate
from app.formula.violation import PenaltyMap
from app.world.capabilities import CapabilityMatrix

from .bfs import ReassignPath, bfs_reassign, hand_overs
from .context import build_context

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReassignmentRecord:
    predicate: ApplyPredicate
    edge: Edge
    disjunct: int
    path: Tuple[int, ...]
    sacrificed: Optional[ApplyPredicate]
    cost: float

    @property
    def reassignments(self) -> int:
        return max(len(self.path) - 1, 0)

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate.name,
            "edge": list(self.edge),
            "disjunct": self.disjunct,
            "path": list(self.path),
            "sacrificed": None if self.sacrificed is None else self.sacrificed.name,
            "cost": self.cost,
        }


class RepairResult(NamedTuple):
    nba: Nba
    unassigned: Dict[DisjunctKey, FrozenSet[ApplyPredicate]]
    log: Tuple[ReassignmentRecord, ...]

    @property
    def edges(self) -> List[Edge]:
        """Distinct repaired edges in repair order."""
        return list(dict.fromkeys(record.edge for record in self.log))


def _rewrite(conjunct: Conjunct, moves: Iterable[Tuple[ApplyPredicate, Optional[int]]]) -> Conjunct:
    renamed = {old: old.with_robot(robot) for old, robot in moves}
    return Conjunct.of(
        lit.with_predicate(renamed[lit.predicate]) if lit.is_positive and lit.predicate in renamed else lit
        for lit in conjunct.literals
    )


def repair(nba: Nba, q_cur: str, failed_set: Iterable[ApplyPredicate], teams: Mapping[int, FrozenSet[int]],
           capabilities: CapabilityMatrix, penalties: PenaltyMap,
           unassigned: Optional[Mapping[DisjunctKey, FrozenSet[ApplyPredicate]]] = None,
           mobility_skill: Optional[int] = 1,
           stationed: Optional[Mapping[int, Optional[str]]] = None) -> RepairResult:
    """
    Args:
        unassigned: predicates given up at earlier failure times; carried over
            and extended
        stationed: region each robot stands on at the failure time, which is
            the only place a robot without mobility can still work

    Returns:
        (revised automaton, unassigned map, reassignment log)
    """
    merged: Dict[DisjunctKey, FrozenSet[ApplyPredicate]] = dict(unassigned or {})
    log: List[ReassignmentRecord] = []
    for failed in sorted(failed_set, key=lambda p: (p.name, p.robot)):
        for edge in failed_edges(nba, q_cur, failed).edges:
            guard = nba.transitions[edge]
            for d, conjunct in enumerate(guard.disjuncts):
                if not conjunct.contains_positive(failed):
                    continue
                ctx = build_context(conjunct, teams, capabilities, failed, mobility_skill, stationed)
                try:
                    path = bfs_reassign(ctx, failed, teams, penalties)
                    moves = hand_overs(path, failed, ctx)
                except NoCandidate:
                    path = ReassignPath((failed.robot,), penalties(failed), failed)
                    moves = [(failed, None)]
                guard = guard.with_disjunct(d, _rewrite(conjunct, moves))
                if path.sacrificed is not None:
                    key = (edge, d)
                    merged[key] = merged.get(key, frozenset()) | {path.sacrificed.with_robot(None)}
                log.append(ReassignmentRecord(failed, edge, d, path.robots, path.sacrificed, path.cost))
                logger.debug("repair %s on %s->%s[%d]: path=%s sacrificed=%s",
                             failed.name, edge[0], edge[1], d, path.robots,
                             None if path.sacrificed is None else path.sacrificed.name)
            nba = nba.with_guard(edge, guard)
    result = RepairResult(nba, merged, tuple(log))
    logger.info("repair from %s: %d edge(s), %d record(s)", q_cur, len(result.edges), len(log))
    return result
