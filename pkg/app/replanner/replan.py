"""
Replan - revise the plan after a repair, reusing old sub-plans where the
true overlap allows and falling back to global synthesis otherwise.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from app.automaton.nba import Nba
from app.automaton.sequences import PdSequence, UnassignedMap, enumerate_pd
from app.errors import Infeasible, NoAcceptingPath, SegmentInfeasible
from app.formula.violation import PenaltyMap
from app.planner.plan import HybridPlan, HybridState, minimal_cycle, plan_violation
from app.planner.search import synthesize
from app.planner.segments import SegmentSpec, connect
from app.planner.transitions import TransitionPlanner
from app.world.capabilities import CapabilityMatrix
from app.world.grid import WorldModel

from .overlap import OverlapEdge, TrueOverlap, true_overlap
from .projection import PREFIX, SUFFIX, project_plan

logger = logging.getLogger(__name__)

MODES = ("auto", "local", "global")


class ReplanMode(str, Enum):
    LOCAL = "Local"
    GLOBAL = "Global"


@dataclass(frozen=True)
class ReplanReport:
    mode: ReplanMode
    pmin: Optional[PdSequence]
    overlap: int = 0
    true_overlap: int = 0
    reused: Tuple[Tuple[int, int], ...] = ()
    violation: float = 0.0
    candidates: int = 0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "pmin": None if self.pmin is None else self.pmin.to_dict(),
            "overlap": self.overlap,
            "true_overlap": self.true_overlap,
            "reused": [list(span) for span in self.reused],
            "violation": self.violation,
            "candidates": self.candidates,
        }


@dataclass(frozen=True)
class ReplanResult:
    plan: HybridPlan
    mode: ReplanMode
    report: ReplanReport = field(compare=False)


class _Stitcher:
    def __init__(self, revised: Nba, world: WorldModel, capabilities: CapabilityMatrix,
                 penalties: PenaltyMap, slack: int):
        self.revised = revised
        self.world = world
        self.capabilities = capabilities
        self.penalties = penalties
        self.slack = slack
        self.planner = TransitionPlanner(revised, world, capabilities, penalties, strict=True, slack=slack)

    def entries(self, fired: HybridState, terminal: HybridState) -> List[HybridState]:
        """`terminal` first, then the other cells the team may step to right after `fired`."""
        found = [terminal]
        for positions in self.planner.entries(fired.positions, terminal.nba_state):
            if positions != terminal.positions:
                found.append(HybridState.idle(positions, terminal.nba_state))
        return found

    def segment(self, start: HybridState, corridor: Sequence[str], choices: Sequence[int],
                goal: Optional[HybridState]) -> List[HybridState]:
        request = SegmentSpec(start, tuple(corridor), tuple(choices), goal)
        return connect(request, self.revised, self.world, self.capabilities, self.penalties, self.slack)

    def part(self, nodes: Sequence[str], choices: Sequence[int], marks: List[Optional[OverlapEdge]],
             start: HybridState, final_goal: Optional[HybridState],
             old: Sequence[HybridState]) -> Tuple[List[HybridState], HybridState]:
        """
        Walk the nodes of one part. A true-overlap edge is copied from the old
        plan; everything between two of them is rebuilt by connect.
        Returns the emitted states and the state the part ends on (not emitted).
        """
        states: List[HybridState] = []
        anchor, anchor_node = start, 0
        last = len(nodes) - 1
        for i in range(last + 1):
            ending = marks[i - 1] if i >= 1 else None
            if ending is not None:
                states.extend(old[ending.start:ending.end])
                anchor, anchor_node = old[ending.end], i
            beginning = marks[i] if i < last else None
            if beginning is not None:
                segment = self.segment(anchor, nodes[anchor_node:i + 1], choices[anchor_node:i], old[beginning.start])
                states.extend(segment[:-1])
        if last >= 1 and marks[last - 1] is not None:
            return states, anchor
        segment = self.segment(anchor, nodes[anchor_node:], choices[anchor_node:], final_goal)
        states.extend(segment[:-1])
        return states, segment[-1]


def _same_place(a: HybridState, b: HybridState) -> bool:
    return a.positions == b.positions and a.nba_state == b.nba_state


def _stitch(pmin: PdSequence, overlap: TrueOverlap, old: Sequence[HybridState], current: HybridState,
            stitcher: _Stitcher) -> Tuple[HybridPlan, Tuple[Tuple[int, int], ...]]:
    split = pmin.split
    prefix_marks: List[Optional[OverlapEdge]] = [overlap.at(m) for m in range(split - 1)]
    suffix_marks: List[Optional[OverlapEdge]] = [overlap.at(m) for m in range(split - 1, len(pmin.path) - 1)]

    prefix_states, terminal = stitcher.part(
        pmin.prefix, pmin.choices[:split - 1], prefix_marks, current, None, old)

    entries = stitcher.entries(prefix_states[-1], terminal) if prefix_states else [terminal]
    error = SegmentInfeasible("no entry into the suffix")
    for entry in entries:
        marks = list(suffix_marks)
        if marks and marks[-1] is not None and not _same_place(old[marks[-1].end], entry):
            marks[-1] = None
        try:
            suffix_states, _ = stitcher.part(pmin.suffix, pmin.choices[split - 1:], marks, entry, entry, old)
        except SegmentInfeasible as exc:
            error = exc
            continue
        if not suffix_states:
            error = SegmentInfeasible("stitched suffix is empty")
            continue
        if suffix_states[0] != entry and not _same_place(suffix_states[0], entry):
            error = SegmentInfeasible("stitched suffix does not start where the prefix ends")
            continue
        reused = tuple(mark.span for mark in prefix_marks + marks if mark is not None)
        return HybridPlan(tuple(prefix_states), minimal_cycle(suffix_states)), reused
    raise error


def _candidates(sequences: List[PdSequence], exhaustive: bool) -> List[PdSequence]:
    if exhaustive:
        return sequences
    best = sequences[0].cost
    return [s for s in sequences if s.cost == best]


def replan(plan: HybridPlan, step: int, revised: Nba, world: WorldModel, capabilities: CapabilityMatrix,
           penalties: PenaltyMap, unassigned: Optional[UnassignedMap] = None, mode: str = "auto",
           slack: int = 0) -> ReplanResult:
    """
    Revise `plan` at time `step` against the repaired automaton.

    mode "auto" tries the cheapest (P, D) sequences with a non-empty true
    overlap and falls back to global synthesis; "local" stitches along every
    candidate in cost order even without overlap; "global" always resynthesizes.

    Raises:
        Infeasible: no plan exists from the current state
        SegmentInfeasible: mode "local" and no candidate could be stitched
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    unassigned = unassigned or {}
    rebased = plan.rebase(step)
    current = rebased.extended[0]

    if mode != "global":
        result = _local(rebased, current, revised, world, capabilities, penalties, unassigned,
                        exhaustive=(mode == "local"), slack=slack)
        if result is not None:
            return result
        if mode == "local":
            raise SegmentInfeasible(f"no candidate sequence from {current.nba_state} could be stitched")

    try:
        fresh = synthesize(revised, world, current.positions, capabilities, penalties,
                           initial=[current.nba_state], slack=slack)
    except Infeasible as exc:
        raise Infeasible(f"replanning from {current.nba_state} at step {step} failed: {exc}") from exc
    violation = plan_violation(fresh, 0, revised, penalties, world, capabilities, unassigned)
    fresh = fresh.with_violation(violation)
    report = ReplanReport(ReplanMode.GLOBAL, None, violation=violation)
    logger.info("global replan at step %d: violation=%s", step, violation)
    return ReplanResult(fresh, ReplanMode.GLOBAL, report)


def _local(rebased: HybridPlan, current: HybridState, revised: Nba, world: WorldModel,
           capabilities: CapabilityMatrix, penalties: PenaltyMap, unassigned: UnassignedMap,
           exhaustive: bool, slack: int) -> Optional[ReplanResult]:
    try:
        sequences = enumerate_pd(revised, current.nba_state, unassigned, penalties)
    except NoAcceptingPath as exc:
        raise Infeasible(str(exc)) from exc

    projection = project_plan(rebased, 0)
    scored = []
    for pmin in _candidates(sequences, exhaustive):
        overlap = true_overlap(pmin, projection, rebased, revised, world, capabilities, unassigned)
        if overlap.edges or exhaustive:
            scored.append((pmin, overlap))
    scored.sort(key=lambda item: (item[0].cost, -len(item[1]), item[0].path, item[0].choices))

    stitcher = _Stitcher(revised, world, capabilities, penalties, slack)
    old = rebased.extended
    for pmin, overlap in scored:
        try:
            stitched, reused = _stitch(pmin, overlap, old, current, stitcher)
        except SegmentInfeasible as exc:
            logger.debug("candidate %s rejected: %s", pmin.path, exc)
            continue
        violation = plan_violation(stitched, 0, revised, penalties, world, capabilities, unassigned)
        stitched = stitched.with_violation(violation)
        report = ReplanReport(
            ReplanMode.LOCAL, pmin, overlap=len(overlap.overlap), true_overlap=len(overlap.edges),
            reused=reused, violation=violation, candidates=len(scored),
        )
        logger.info("local replan along %s: |O|=%d |O*|=%d violation=%s",
                    "->".join(pmin.path), report.overlap, report.true_overlap, violation)
        return ReplanResult(stitched, ReplanMode.LOCAL, report)
    return None
