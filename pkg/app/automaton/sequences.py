"""
Sequences - enumerate automaton paths with disjunct choices and cost them by
the penalties of the predicates they leave unassigned.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

import networkx as nx

from app.errors import NoAcceptingPath
from app.formula.guard import unassigned_in
from app.formula.predicates import ApplyPredicate
from app.formula.violation import PenaltyMap

from .analysis import reachable_from
from .nba import Edge, Nba

logger = logging.getLogger(__name__)

DisjunctKey = Tuple[Edge, int]
UnassignedMap = Mapping[DisjunctKey, FrozenSet[ApplyPredicate]]


@dataclass(frozen=True)
class PdSequence:
    """
    path: prefix states followed by the suffix cycle without repeating the
        accepting state at the junction, e.g. (q0, q3, q3) for prefix
        (q0, q3) and self-loop suffix (q3, q3)
    split: number of prefix states; path[split - 1] is the accepting state
    choices: one disjunct index per edge of path
    """
    path: Tuple[str, ...]
    split: int
    choices: Tuple[int, ...]
    cost: float

    @property
    def prefix(self) -> Tuple[str, ...]:
        return self.path[:self.split]

    @property
    def suffix(self) -> Tuple[str, ...]:
        return self.path[self.split - 1:]

    @property
    def accepting_state(self) -> str:
        return self.path[self.split - 1]

    def edges(self) -> List[Tuple[Edge, int]]:
        return [((self.path[m], self.path[m + 1]), self.choices[m]) for m in range(len(self.path) - 1)]

    def in_prefix(self, m: int) -> bool:
        """Edge m belongs to the prefix part."""
        return m < self.split - 1

    def sort_key(self) -> Tuple:
        return (self.cost, self.path, self.choices)

    def to_dict(self) -> dict:
        return {"prefix": list(self.prefix), "suffix": list(self.suffix),
                "choices": list(self.choices), "cost": self.cost}


def transition_cost(nba: Nba, edge: Edge, disjunct: int, unassigned: UnassignedMap,
                    penalties: PenaltyMap) -> float:
    """Penalty of the unassigned predicates of one disjunct of one transition."""
    conjunct = nba.transitions[edge].disjuncts[disjunct]
    names: Dict[str, ApplyPredicate] = {p.name: p for p in unassigned.get((edge, disjunct), ())}
    for predicate in unassigned_in(conjunct):
        names.setdefault(predicate.name, predicate)
    return sum(penalties(p) for p in names.values())


def _prefix_paths(nba: Nba, q_cur: str, reachable: Iterable[str]) -> List[Tuple[str, ...]]:
    paths = []
    for q_f in sorted(nba.accepting & set(reachable)):
        if q_f == q_cur:
            paths.append((q_cur,))
        else:
            paths.extend(tuple(p) for p in nx.all_simple_paths(nba.graph, q_cur, q_f))
    return sorted(paths)


def _suffix_cycles(nba: Nba, q_f: str) -> List[Tuple[str, ...]]:
    cycles = []
    for succ in nba.successors(q_f):
        if succ == q_f:
            cycles.append((q_f, q_f))
        else:
            cycles.extend((q_f,) + tuple(p) for p in nx.all_simple_paths(nba.graph, succ, q_f))
    return sorted(cycles)


def enumerate_pd(nba: Nba, q_cur: str, unassigned: UnassignedMap,
                 penalties: PenaltyMap) -> List[PdSequence]:
    """
    Every simple prefix path q_cur -> accepting crossed with every simple cycle
    back through that accepting state and every choice of disjuncts, sorted by
    (cost, path, choices).

    Raises:
        NoAcceptingPath: no accepting state with a cycle is reachable
    """
    reachable = reachable_from(nba, q_cur)
    cycles_of = {q_f: _suffix_cycles(nba, q_f) for q_f in sorted(nba.accepting & reachable)}

    sequences = []
    for prefix in _prefix_paths(nba, q_cur, reachable):
        for cycle in cycles_of[prefix[-1]]:
            path = prefix + cycle[1:]
            edges = [(path[m], path[m + 1]) for m in range(len(path) - 1)]
            options = [
                [(d, transition_cost(nba, edge, d, unassigned, penalties))
                 for d in range(len(nba.transitions[edge].disjuncts))]
                for edge in edges
            ]
            for combo in itertools.product(*options):
                choices = tuple(d for d, _ in combo)
                cost = sum(c for _, c in combo)
                sequences.append(PdSequence(path, len(prefix), choices, cost))

    if not sequences:
        raise NoAcceptingPath(f"no accepting cycle is reachable from {q_cur}")
    sequences.sort(key=PdSequence.sort_key)
    logger.debug("enumerate_pd from %s: %d sequences, best cost %s", q_cur, len(sequences), sequences[0].cost)
    return sequences
