"""
Runner - execute the plan step by step, injecting scheduled failures and
repairing and replanning as they happen.
"""
import logging
from collections import defaultdict
from typing import Dict, List, Optional

from app.config import Settings
from app.errors import Infeasible, InfeasibleMission, SegmentInfeasible
from app.formula.labeling import label
from app.formula.violation import INF, edge_violation
from app.planner.plan import HybridPlan, effective_guard
from app.planner.search import synthesize
from app.reallocation.repair import repair
from app.replanner.replan import replan
from app.world.capabilities import FailureEvent, apply_failure, teams

from . import events
from .events import EventLog
from .scenario import Scenario

logger = logging.getLogger(__name__)


def _batched(failures) -> Dict[int, FailureEvent]:
    """All losses scheduled for the same step form one event."""
    losses = defaultdict(list)
    for ev in failures:
        losses[ev.time].extend(ev.losses)
    return {time: FailureEvent(time, tuple(dict.fromkeys(group))) for time, group in losses.items()}


def run(scenario: Scenario, settings: Optional[Settings] = None, suffix_cycles: Optional[int] = None,
        mode: str = "auto") -> EventLog:
    """
    Execute the mission until the current plan's prefix plus `suffix_cycles`
    suffix repetitions have run and no failure is pending.

    The final MissionViolation totals the executed step costs over the first
    T+K+1 steps since the last replan, so it matches that replan's violation.

    Raises:
        InfeasibleMission: the initial plan or a replan has no solution
    """
    settings = settings or Settings()
    cycles = suffix_cycles
    if cycles is None:
        cycles = settings.suffix_cycles if scenario.suffix_cycles is None else scenario.suffix_cycles
    world, penalties = scenario.world, scenario.penalties
    nba = scenario.nba
    capabilities = scenario.capabilities
    unassigned: Dict = {}
    log = EventLog()

    try:
        plan = synthesize(nba, world, scenario.start, capabilities, penalties, slack=settings.travel_slack)
    except Infeasible as exc:
        raise InfeasibleMission(f"scenario {scenario.name}: {exc}") from exc
    log.emit(0, events.PLAN_SYNTHESIZED, T=plan.T, K=plan.K, violation=plan.violation)

    schedule = _batched(scenario.failures)
    base = 0
    end = len(plan.prefix) + cycles * plan.K
    costs: List[float] = []
    window = plan.horizon
    replans = 0
    t = 0
    while t < end or any(time >= t for time in schedule):
        if t in schedule:
            plan, capabilities, nba, unassigned = _recover(
                log, t, schedule[t], plan, t - base, capabilities, nba, unassigned, scenario, settings, mode)
            base, costs, window = t, [], plan.horizon
            end = t + len(plan.prefix) + cycles * plan.K
            replans += 1
        costs.append(_execute(log, t, plan, t - base, nba, capabilities, unassigned, scenario))
        t += 1

    total = sum(costs[:window])
    log.emit(t, events.MISSION_VIOLATION, total=total, replans=replans, steps=t)
    logger.info("scenario %s finished after %d steps: violation=%s replans=%d", scenario.name, t, total, replans)
    return log


def _execute(log: EventLog, t: int, plan: HybridPlan, k: int, nba, capabilities, unassigned,
             scenario: Scenario) -> float:
    state, following = plan.state_at(k), plan.state_at(k + 1)
    symbol = label(state.positions, state.skills, scenario.world, capabilities)
    guard = effective_guard(nba, (state.nba_state, following.nba_state), unassigned)
    cost = INF if guard is None else edge_violation(symbol, guard, scenario.penalties)
    log.emit(t, events.STEP_EXECUTED,
             positions=[list(p) for p in state.positions],
             skills=list(state.skills),
             atoms=[list(a) for a in sorted(symbol.atoms)],
             transition=[state.nba_state, following.nba_state],
             violation=cost)
    return cost


def _recover(log: EventLog, t: int, ev: FailureEvent, plan: HybridPlan, k: int, capabilities, nba, unassigned,
             scenario: Scenario, settings: Settings, mode: str):
    world = scenario.world
    capabilities, failed = apply_failure(capabilities, ev, nba.assigned_predicates(), world.mobility_skill)
    log.emit(t, events.FAILURE_INJECTED, losses=[list(loss) for loss in ev.losses],
             failed=sorted(p.name for p in failed))

    here = plan.state_at(k)
    q_cur = here.nba_state
    if failed:
        stationed = {robot: world.region_at(cell) for robot, cell in enumerate(here.positions, 1)}
        result = repair(nba, q_cur, failed, teams(capabilities), capabilities, scenario.penalties,
                        unassigned, world.mobility_skill, stationed)
        log.emit(t, events.EDGES_REPAIRED, edges=[list(e) for e in result.edges], count=len(result.edges))
        for record in result.log:
            log.emit(t, events.REASSIGNED, **record.to_dict())
        nba, unassigned = result.nba, result.unassigned
    else:
        log.emit(t, events.EDGES_REPAIRED, edges=[], count=0)

    try:
        outcome = replan(plan, k, nba, world, capabilities, scenario.penalties, unassigned, mode=mode,
                         slack=settings.travel_slack)
    except (Infeasible, SegmentInfeasible) as exc:
        raise InfeasibleMission(f"replanning at step {t} failed: {exc}") from exc
    log.emit(t, events.REPLANNED, **outcome.report.to_dict())
    return outcome.plan, capabilities, nba, unassigned
