"""
Overlap - transitions shared by the old plan and the new optimal sequence, and
the subset whose old sub-plans can be reused verbatim.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.automaton.nba import Edge, Nba
from app.automaton.sequences import PdSequence, UnassignedMap
from app.errors import PositionOutOfBounds, SkillNotPossessed
from app.formula.labeling import label
from app.formula.predicates import IDLE, Task
from app.formula.violation import satisfies
from app.planner.plan import HybridPlan, HybridState, effective_guard
from app.world.capabilities import CapabilityMatrix
from app.world.grid import WorldModel

from .projection import PREFIX, SUFFIX, PlanProjection, ProjectedEdge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OverlapEdge:
    index: int      # position of the edge in the (P, D) sequence
    source: str
    target: str
    disjunct: int
    start: int      # k1 into the extended old plan
    end: int        # k2
    part: str

    @property
    def edge(self) -> Edge:
        return (self.source, self.target)

    @property
    def span(self) -> Tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class TrueOverlap:
    overlap: Tuple[OverlapEdge, ...]
    edges: Tuple[OverlapEdge, ...]

    def at(self, index: int) -> Optional[OverlapEdge]:
        for item in self.edges:
            if item.index == index:
                return item
        return None

    def __len__(self) -> int:
        return len(self.edges)


def _applied(state: HybridState, world: WorldModel) -> Dict[int, Task]:
    result = {}
    for robot, (cell, skill) in enumerate(zip(state.positions, state.skills), start=1):
        region = world.region_at(cell)
        if skill != IDLE and region is not None:
            result[robot] = (skill, region)
    return result


def _match(pmin: PdSequence, projected: List[ProjectedEdge]) -> List[Tuple[int, int]]:
    """Greedy in-order pairing of (P, D) edges with projected edges, part by part."""
    pairs = []
    pointers = {PREFIX: 0, SUFFIX: 0}
    by_part = {PREFIX: [j for j, e in enumerate(projected) if e.part == PREFIX],
               SUFFIX: [j for j, e in enumerate(projected) if e.part == SUFFIX]}
    for m, (edge, _) in enumerate(pmin.edges()):
        part = PREFIX if pmin.in_prefix(m) else SUFFIX
        candidates = by_part[part]
        for position in range(pointers[part], len(candidates)):
            j = candidates[position]
            if projected[j].edge == edge:
                pairs.append((m, j))
                pointers[part] = position + 1
                break
    return pairs


def _reusable(span: OverlapEdge, states, revised: Nba, world: WorldModel, capabilities: CapabilityMatrix,
              unassigned: Optional[UnassignedMap]) -> bool:
    loop = effective_guard(revised, (span.source, span.source), unassigned)
    guard = effective_guard(revised, span.edge, unassigned)
    if guard is None or span.disjunct >= len(guard.disjuncts):
        return False
    try:
        for k in range(span.start, span.end - 1):
            if loop is None:
                return False
            symbol = label(states[k].positions, states[k].skills, world, capabilities)
            if not any(satisfies(symbol, conjunct) for conjunct in loop.disjuncts):
                return False
        last = states[span.end - 1]
        symbol = label(last.positions, last.skills, world, capabilities)
    except (SkillNotPossessed, PositionOutOfBounds):
        return False
    return satisfies(symbol, guard.disjuncts[span.disjunct])


def true_overlap(pmin: PdSequence, ptau: PlanProjection, plan: HybridPlan, revised: Nba, world: WorldModel,
                 capabilities: CapabilityMatrix, unassigned: Optional[UnassignedMap] = None) -> TrueOverlap:
    """
    O pairs equal consecutive states of P^min and P^tau. An edge of O is kept
    when (1) every robot's most recent task before it agrees in both sequences
    and (2) the old span still satisfies the revised self-loop and edge guards
    under the current capabilities.
    """
    states = plan.extended
    projected = ptau.edges()
    pairs = _match(pmin, projected)

    recent_min: List[Dict[int, Task]] = []
    tracker: Dict[int, Task] = {}
    for edge, d in pmin.edges():
        recent_min.append(dict(tracker))
        for predicate in revised.transitions[edge].disjuncts[d].positives:
            if predicate.robot is not None:
                tracker[predicate.robot] = predicate.task

    recent_tau: List[Dict[int, Task]] = []
    tracker = {}
    for item in projected:
        recent_tau.append(dict(tracker))
        tracker.update(_applied(states[item.end - 1], world))

    overlap, kept = [], []
    for m, j in pairs:
        item = projected[j]
        span = OverlapEdge(m, item.source, item.target, pmin.choices[m], item.start, item.end, item.part)
        overlap.append(span)
        if recent_min[m] != recent_tau[j]:
            logger.debug("overlap %s->%s fails the task-history check", item.source, item.target)
            continue
        if not _reusable(span, states, revised, world, capabilities, unassigned):
            logger.debug("overlap %s->%s is not reusable under the revised guards", item.source, item.target)
            continue
        kept.append(span)
    return TrueOverlap(tuple(overlap), tuple(kept))
