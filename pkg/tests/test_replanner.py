"""
Plan projection, true overlap and local/global replanning
"""
import pytest

from app.automaton.sequences import enumerate_pd
from app.errors import SegmentInfeasible
from app.planner import HybridPlan, HybridState, synthesize
from app.reallocation import repair
from app.replanner import PREFIX, ReplanMode, project_plan, replan, true_overlap
from app.runtime.scenario import scenario_from_document
from app.world.capabilities import FailureEvent, apply_failure, teams
from tests.conftest import corridor_document


def solve(scenario):
    return synthesize(scenario.nba, scenario.world, scenario.start, scenario.capabilities, scenario.penalties)


def fail(scenario, step, losses):
    z, failed = apply_failure(scenario.capabilities, FailureEvent(step, tuple(losses)),
                              scenario.nba.assigned_predicates(), scenario.world.mobility_skill)
    return z, failed


def test_projection_records_entry_indices(corridor):
    plan = solve(corridor)
    projection = project_plan(plan)
    assert projection.prefix == ("q0", "q1")
    assert projection.prefix_z == (0, 4)
    assert projection.suffix == ("q1",)
    assert projection.sequence == ("q0", "q1")
    edge, = projection.edges()
    assert (edge.edge, edge.start, edge.end, edge.part) == (("q0", "q1"), 0, 4, PREFIX)


def test_projection_from_a_later_step(corridor):
    plan = solve(corridor)
    assert project_plan(plan, 2).prefix_z == (2, 4)
    with pytest.raises(ValueError):
        project_plan(plan, 5)


def test_projection_sees_a_state_change_on_closing():
    a, b = HybridState.idle([(0, 0)], "q1"), HybridState.idle([(0, 0)], "q2")
    plan = HybridPlan((), (a, b))
    projection = project_plan(plan)
    assert projection.suffix == ("q1", "q2", "q1")
    assert projection.suffix_z == (0, 1, 2)


def test_unchanged_automaton_reuses_the_whole_plan(corridor):
    plan = solve(corridor)
    result = replan(plan, 0, corridor.nba, corridor.world, corridor.capabilities, corridor.penalties)
    assert result.mode is ReplanMode.LOCAL
    assert result.plan.prefix == plan.prefix
    assert result.plan.suffix == plan.suffix
    assert result.plan.violation == 0
    assert result.report.reused == ((0, 4),)
    assert result.report.true_overlap == 1


def test_reassigned_task_voids_the_overlap_and_falls_back_to_global(corridor_pair):
    scenario = corridor_pair
    plan = solve(scenario)
    z, failed = fail(scenario, 0, [(1, 2)])
    repaired = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
    weld = repaired.nba.guard("q0", "q1").disjuncts[0].positives[0]
    assert weld.robot == 2

    pmin = enumerate_pd(repaired.nba, "q0", repaired.unassigned, scenario.penalties)[0]
    overlap = true_overlap(pmin, project_plan(plan), plan, repaired.nba, scenario.world, z, repaired.unassigned)
    assert len(overlap.overlap) == 1
    assert len(overlap) == 0

    result = replan(plan, 0, repaired.nba, scenario.world, z, scenario.penalties, repaired.unassigned)
    assert result.mode is ReplanMode.GLOBAL
    assert result.plan.violation == 0
    assert result.plan.prefix[-1].skills == (0, 2)
    assert result.plan.prefix[-1].positions[1] == (3, 0)


def test_forced_local_and_global_agree(corridor_pair):
    scenario = corridor_pair
    plan = solve(scenario)
    z, failed = fail(scenario, 0, [(1, 2)])
    repaired = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
    args = (repaired.nba, scenario.world, z, scenario.penalties, repaired.unassigned)
    local = replan(plan, 0, *args, mode="local")
    forced = replan(plan, 0, *args, mode="global")
    assert local.mode is ReplanMode.LOCAL
    assert forced.mode is ReplanMode.GLOBAL
    assert local.plan.violation == forced.plan.violation == 0


def test_sacrificed_predicate_shows_up_in_the_new_violation(corridor):
    plan = solve(corridor)
    z, failed = fail(corridor, 1, [(1, 2)])
    repaired = repair(corridor.nba, "q0", failed, teams(z), z, corridor.penalties)
    for mode in ("auto", "local", "global"):
        result = replan(plan, 1, repaired.nba, corridor.world, z, corridor.penalties, repaired.unassigned,
                        mode=mode)
        assert result.plan.violation == 10


def test_relay_failure_forces_global_replan_with_cost_15(relay):
    plan = solve(relay)
    z, failed = fail(relay, 2, [(2, 3)])
    q_cur = plan.state_at(2).nba_state
    repaired = repair(relay.nba, q_cur, failed, teams(z), z, relay.penalties)
    result = replan(plan, 2, repaired.nba, relay.world, z, relay.penalties, repaired.unassigned)
    assert result.mode is ReplanMode.GLOBAL
    assert result.plan.violation == 15
    assert result.report.to_dict()["mode"] == "Global"


def test_unknown_mode_is_rejected(corridor):
    plan = solve(corridor)
    with pytest.raises(ValueError):
        replan(plan, 0, corridor.nba, corridor.world, corridor.capabilities, corridor.penalties, mode="fast")


def test_forced_local_without_any_stitchable_candidate(corridor):
    plan = solve(corridor)
    z = corridor.capabilities.without([(1, 1), (1, 2)])
    with pytest.raises(SegmentInfeasible):
        replan(plan, 0, corridor.nba, corridor.world, z, corridor.penalties, mode="local")


def three_stage_document():
    """Robot 1 works at a, robot 2 at b, then robot 1 finishes at goal; robot 3 can finish too."""
    document = corridor_document(3)
    document["world"]["regions"].update(a=[1, 0], b=[2, 1])
    document["robots"]["skill_count"] = 3
    document["robots"]["skills"] = {"1": [1, 2, 3], "2": [1, 2], "3": [1, 3]}
    document["predicates"] = {
        "p1": {"kind": "apply", "skill": 2, "robot": 1, "region": "a", "penalty": 10},
        "p2": {"kind": "apply", "skill": 2, "robot": 2, "region": "b", "penalty": 10},
        "p3": {"kind": "apply", "skill": 3, "robot": 1, "region": "goal", "penalty": 10},
    }
    states = ["q0", "q1", "q2", "q3"]
    document["automaton"] = {
        "states": [{"id": "q0", "initial": True}, {"id": "q1"}, {"id": "q2"}, {"id": "q3", "accepting": True}],
        "transitions": [{"from": q, "to": q, "dnf": "true"} for q in states] + [
            {"from": source, "to": target, "dnf": [[f"pi:p{k}"]]}
            for k, (source, target) in enumerate(zip(states, states[1:]), start=1)
        ],
    }
    return document


def test_local_replan_mixes_reused_spans_with_rebuilt_segments():
    scenario = scenario_from_document(three_stage_document())
    plan = solve(scenario)
    z, failed = fail(scenario, 0, [(1, 3)])
    assert [p.name for p in failed] == ["p3"]
    repaired = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
    assert repaired.nba.guard("q2", "q3").disjuncts[0].positives[0].robot == 3

    args = (repaired.nba, scenario.world, z, scenario.penalties, repaired.unassigned)
    result = replan(plan, 0, *args)
    assert result.mode is ReplanMode.LOCAL
    assert result.report.reused == ((0, 2), (2, 4))
    old, new = plan.extended, result.plan.extended
    for start, end in result.report.reused:
        assert new[start:end] == old[start:end]
    # the last stage is rebuilt around the stand-in
    assert result.plan.prefix[-1].skills == (0, 0, 3)
    assert result.plan.prefix[-1].positions[2] == (3, 0)
    assert result.plan.violation == replan(plan, 0, *args, mode="global").plan.violation == 0


def test_local_replan_steps_off_a_cell_the_accepting_loop_forbids():
    document = corridor_document(2)
    document["predicates"]["keep"] = {"kind": "avoid", "scope_skill": 1, "subject": "all", "skill": 1,
                                      "region": "goal"}
    document["automaton"]["transitions"][2]["dnf"] = [["npi:keep"]]
    scenario = scenario_from_document(document)
    plan = solve(scenario)
    z, failed = fail(scenario, 0, [(1, 2)])
    repaired = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
    args = (repaired.nba, scenario.world, z, scenario.penalties, repaired.unassigned)
    local = replan(plan, 0, *args, mode="local")
    assert local.mode is ReplanMode.LOCAL
    assert local.plan.prefix[-1].positions[1] == (3, 0)
    assert all((3, 0) not in state.positions for state in local.plan.suffix)
    assert local.plan.violation == replan(plan, 0, *args, mode="global").plan.violation == 0
