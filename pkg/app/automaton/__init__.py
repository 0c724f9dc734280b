"""
Automaton - NBA loading, pruning, reachability and (P, D) enumeration.
"""
from .nba import Edge, Nba
from .loader import load_nba, load_predicates
from .analysis import FailedEdgeSet, SelfLoopIssue, check_self_loops, failed_edges, prune, reachable_from
from .sequences import PdSequence, UnassignedMap, enumerate_pd, transition_cost

__all__ = [
    "Edge", "Nba", "load_nba", "load_predicates",
    "FailedEdgeSet", "SelfLoopIssue", "check_self_loops", "failed_edges", "prune", "reachable_from",
    "PdSequence", "UnassignedMap", "enumerate_pd", "transition_cost",
]
