"""
Reassignment context, BFS hand-over chains and whole-automaton repair
"""
import time

import pytest

from app.errors import FailedPredicateAbsent, NoCandidate
from app.oracles.instances import chain_instance
from app.reallocation import bfs_reassign, build_context, hand_overs, repair
from app.runtime.scenario import scenario_from_document
from app.world.capabilities import FailureEvent, apply_failure, teams
from tests.conftest import corridor_document


def after_failure(scenario, losses):
    return apply_failure(scenario.capabilities, FailureEvent(2, tuple(losses)),
                         scenario.nba.assigned_predicates(), scenario.world.mobility_skill)


def test_context_reads_busy_free_and_forbidden(relay):
    z, _ = after_failure(relay, [(2, 3)])
    conjunct = relay.nba.guard("q0", "q3").disjuncts[0]
    pi5 = relay.predicates["pi5"]
    ctx = build_context(conjunct, teams(z), z, pi5)
    assert {r: p.name for r, p in ctx.busy.items()} == {1: "pi4", 3: "pi6", 4: "pi1"}
    assert ctx.free == frozenset({2})
    assert ctx.robots_in_formula == frozenset({1, 2, 3, 4})
    # robot 4 holds skill 5, so it may not even stand on l2
    assert ctx.forbidden[4].regions == frozenset({"l2"})
    assert ctx.blocks(4, (3, "l2"))
    assert not ctx.blocks(3, (3, "l2"))


def test_context_requires_the_failed_predicate(relay):
    conjunct = relay.nba.guard("q0", "q1").disjuncts[0]
    with pytest.raises(FailedPredicateAbsent):
        build_context(conjunct, teams(relay.capabilities), relay.capabilities, relay.predicates["pi5"])


def test_bfs_sacrifices_cheapest_reachable_task(relay):
    z, _ = after_failure(relay, [(2, 3)])
    conjunct = relay.nba.guard("q0", "q3").disjuncts[0]
    pi5 = relay.predicates["pi5"]
    ctx = build_context(conjunct, teams(z), z, pi5)
    path = bfs_reassign(ctx, pi5, teams(z), relay.penalties)
    assert path.robots == (2, 3)
    assert path.cost == 15
    assert path.sacrificed.name == "pi6"
    moves = [(p.name, robot) for p, robot in hand_overs(path, pi5, ctx)]
    assert moves == [("pi5", 3), ("pi6", None)]


def test_bfs_follows_a_chain_to_the_free_robot():
    instance = chain_instance(3)
    ctx = build_context(instance.conjunct, instance.teams, instance.capabilities, instance.failed)
    path = bfs_reassign(ctx, instance.failed, instance.teams, instance.penalties)
    assert path.robots == (1, 2, 3, 4)
    assert path.cost == 0 and path.sacrificed is None
    moves = [(p.name, robot) for p, robot in hand_overs(path, instance.failed, ctx)]
    assert moves == [("p1", 2), ("p2", 3), ("p3", 4)]


def test_bfs_gives_up_when_nobody_beats_the_failed_penalty():
    instance = chain_instance(2, penalty=5)
    # drop the free robot's skill so the chain dead-ends on equal penalties
    capabilities = instance.capabilities.without([(3, 4)])
    team = teams(capabilities)
    ctx = build_context(instance.conjunct, team, capabilities, instance.failed)
    with pytest.raises(NoCandidate):
        bfs_reassign(ctx, instance.failed, team, instance.penalties)


def test_long_chain_is_fast():
    instance = chain_instance(250)
    started = time.perf_counter()
    ctx = build_context(instance.conjunct, instance.teams, instance.capabilities, instance.failed)
    path = bfs_reassign(ctx, instance.failed, instance.teams, instance.penalties)
    elapsed = time.perf_counter() - started
    assert path.hops == 250
    assert path.cost == 0
    assert elapsed < 1.0


def test_repair_rewrites_every_reachable_edge(relay):
    z, failed = after_failure(relay, [(2, 3)])
    assert [p.name for p in failed] == ["pi5"]
    result = repair(relay.nba, "q0", failed, teams(z), z, relay.penalties)
    assert len(result.edges) == 5
    assert len(result.log) == 5
    assert all(record.path == (2, 3) and record.sacrificed.name == "pi6" for record in result.log)
    for edge in result.edges:
        conjunct = result.nba.transitions[edge].disjuncts[0]
        robots = {p.name: p.robot for p in conjunct.positives}
        assert robots["pi5"] == 3
        assert robots["pi6"] is None
        assert result.unassigned[(edge, 0)] == frozenset({relay.predicates["pi6"].with_robot(None)})
    # untouched guards keep their robots
    assert result.nba.guard("q0", "q1") == relay.nba.guard("q0", "q1")


def test_repair_from_accepting_state_touches_nothing(relay):
    z, failed = after_failure(relay, [(2, 3)])
    result = repair(relay.nba, "q3", failed, teams(z), z, relay.penalties)
    assert result.edges == []
    assert result.nba == relay.nba
    assert result.unassigned == {}


def test_repair_without_any_teammate_drops_the_predicate(corridor):
    z, failed = after_failure(corridor, [(1, 2)])
    result = repair(corridor.nba, "q0", failed, teams(z), z, corridor.penalties)
    record, = result.log
    assert record.sacrificed.name == "weld"
    assert record.path == (1,)
    assert record.reassignments == 0
    assert result.nba.guard("q0", "q1").disjuncts[0].positives[0].robot is None


def test_robot_without_mobility_only_takes_tasks_where_it_stands():
    document = corridor_document(2)
    document["robots"]["skills"]["2"] = [2]
    scenario = scenario_from_document(document)
    z, failed = after_failure(scenario, [(1, 2)])
    weld, = failed
    conjunct = scenario.nba.guard("q0", "q1").disjuncts[0]

    ctx = build_context(conjunct, teams(z), z, weld, stationed={1: None, 2: None})
    assert ctx.blocks(2, weld.task)
    with pytest.raises(NoCandidate):
        bfs_reassign(ctx, weld, teams(z), scenario.penalties)

    ctx = build_context(conjunct, teams(z), z, weld, stationed={1: None, 2: "goal"})
    assert not ctx.blocks(2, weld.task)
    assert bfs_reassign(ctx, weld, teams(z), scenario.penalties).robots == (1, 2)


def test_repair_sacrifices_when_only_an_immobile_robot_could_help():
    document = corridor_document(2)
    document["robots"]["skills"]["2"] = [2]
    scenario = scenario_from_document(document)
    z, failed = after_failure(scenario, [(1, 2)])
    result = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
    record, = result.log
    assert record.sacrificed.name == "weld"
    result = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties, stationed={2: "goal"})
    record, = result.log
    assert record.sacrificed is None and record.path == (1, 2)
