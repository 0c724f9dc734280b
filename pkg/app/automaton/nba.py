"""
NBA - Büchi automaton with DNF guards.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from app.errors import DanglingState, NoAcceptingState, NoInitialState
from app.formula.guard import GuardDNF
from app.formula.predicates import ApplyPredicate

Edge = Tuple[str, str]


@dataclass(frozen=True)
class Nba:
    states: Tuple[str, ...]
    initial: FrozenSet[str]
    accepting: FrozenSet[str]
    transitions: Dict[Edge, GuardDNF] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(set(self.states))))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        declared = set(self.states)
        if not self.initial:
            raise NoInitialState("automaton has no initial state")
        if not self.accepting:
            raise NoAcceptingState("automaton has no accepting state")
        for group, name in ((self.initial, "initial"), (self.accepting, "accepting")):
            unknown = group - declared
            if unknown:
                raise DanglingState(f"{name} states {sorted(unknown)} are not declared")
        for source, target in self.transitions:
            if source not in declared or target not in declared:
                raise DanglingState(f"transition {source}->{target} uses an undeclared state")

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        g.add_edges_from(self.transitions)
        return g

    def edges(self) -> List[Edge]:
        return sorted(self.transitions)

    def guard(self, source: str, target: str) -> Optional[GuardDNF]:
        return self.transitions.get((source, target))

    def self_loop(self, state: str) -> Optional[GuardDNF]:
        return self.transitions.get((state, state))

    def successors(self, state: str) -> List[str]:
        return sorted(self.graph.successors(state))

    def with_guard(self, edge: Edge, guard: GuardDNF) -> "Nba":
        transitions = dict(self.transitions)
        transitions[edge] = guard
        return replace(self, transitions=transitions)

    def assigned_predicates(self) -> FrozenSet[ApplyPredicate]:
        """Positive apply predicates that currently have a robot."""
        return frozenset(
            p for guard in self.transitions.values()
            for conjunct in guard.disjuncts
            for p in conjunct.positives if p.robot is not None
        )
