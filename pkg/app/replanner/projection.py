"""
Projection - the automaton states a plan passes through, with the plan index
at which each one is entered.
"""
from dataclasses import dataclass
from typing import List, Tuple

from app.automaton.nba import Edge
from app.planner.plan import HybridPlan

PREFIX = "prefix"
SUFFIX = "suffix"


@dataclass(frozen=True)
class ProjectedEdge:
    source: str
    target: str
    start: int  # index where the plan enters source
    end: int    # index where it enters target
    part: str

    @property
    def edge(self) -> Edge:
        return (self.source, self.target)


@dataclass(frozen=True)
class PlanProjection:
    prefix: Tuple[str, ...]
    prefix_z: Tuple[int, ...]
    suffix: Tuple[str, ...]
    suffix_z: Tuple[int, ...]

    @property
    def sequence(self) -> Tuple[str, ...]:
        return self.prefix + self.suffix[1:]

    @property
    def z(self) -> Tuple[int, ...]:
        return self.prefix_z + self.suffix_z[1:]

    def edges(self) -> List[ProjectedEdge]:
        result = []
        for states, z, part in ((self.prefix, self.prefix_z, PREFIX), (self.suffix, self.suffix_z, SUFFIX)):
            for i in range(len(states) - 1):
                result.append(ProjectedEdge(states[i], states[i + 1], z[i], z[i + 1], part))
        return result


def _changes(states, first: int, last: int) -> Tuple[List[str], List[int]]:
    sequence, z = [states[first].nba_state], [first]
    for k in range(first + 1, last + 1):
        if states[k].nba_state != states[k - 1].nba_state:
            sequence.append(states[k].nba_state)
            z.append(k)
    return sequence, z


def project_plan(plan: HybridPlan, current_step: int = 0) -> PlanProjection:
    """
    Indices refer to plan.extended; index T+K+1 stands for the return to the
    first suffix state and shows up when the cycle changes state on closing.
    """
    boundary = len(plan.prefix)
    if not 0 <= current_step <= boundary:
        raise ValueError(f"step {current_step} is past the prefix; rebase the plan first")
    states = plan.extended
    prefix, prefix_z = _changes(states, current_step, boundary)
    suffix, suffix_z = _changes(states, boundary, boundary + plan.K)
    return PlanProjection(tuple(prefix), tuple(prefix_z), tuple(suffix), tuple(suffix_z))
