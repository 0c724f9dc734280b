"""
Exhaustive and baseline oracles checked against the planner
"""
import math
import random

import pytest

from app.automaton.sequences import enumerate_pd
from app.errors import NoCandidate, TooLarge
from app.formula import ApplyPredicate, Conjunct, GuardDNF, Literal, LiteralKind, PenaltyMap, Symbol
from app.oracles import (
    OracleReport, brute_edge_violation, brute_product_plan, brute_reassign, chain_instance, digest,
    hungarian_reassign, random_mission_document, random_reassign_instance,
)
from app.planner import synthesize
from app.reallocation import bfs_reassign, build_context, repair
from app.replanner import ReplanMode, replan
from app.runtime import scenario_from_document
from app.world.capabilities import FailureEvent, apply_failure, teams

SEEDS = range(200)
MISSION_SEEDS = range(400)
LOCAL_REPLANS = 50


def bfs_outcome(instance):
    ctx = build_context(instance.conjunct, instance.teams, instance.capabilities,
                        instance.failed, instance.mobility_skill)
    try:
        path = bfs_reassign(ctx, instance.failed, instance.teams, instance.penalties)
    except NoCandidate:
        return ctx, (instance.penalties(instance.failed), 0)
    return ctx, (path.cost, path.hops)


def test_edge_oracle_on_the_worked_example():
    p1, p2, p3 = (ApplyPredicate(f"p{i}", 2, i, f"l{i}") for i in (1, 2, 3))
    guard = GuardDNF((Conjunct.of([Literal(LiteralKind.POSITIVE_APPLY, p1), Literal(LiteralKind.POSITIVE_APPLY, p2)]),
                      Conjunct.of([Literal(LiteralKind.POSITIVE_APPLY, p3)])))
    sigma = Symbol.of([(1, 2, "l1")], {(1, 2), (2, 2), (3, 2)}, 1)
    assert brute_edge_violation(sigma, guard, PenaltyMap({"p1": 10, "p2": 20, "p3": 50})) == 20
    with pytest.raises(TooLarge):
        brute_edge_violation(sigma, guard, PenaltyMap({"p1": 10, "p2": 20, "p3": 50}), limit=2)


def test_bfs_matches_exhaustive_search_on_random_instances():
    for seed in SEEDS:
        instance = random_reassign_instance(random.Random(seed))
        ctx, found = bfs_outcome(instance)
        expected = brute_reassign(ctx, instance.failed, instance.teams, instance.penalties)
        assert found == expected, f"seed {seed}"


def test_bfs_matches_exhaustive_search_with_robots_that_cannot_move():
    for seed in SEEDS:
        rng = random.Random(seed)
        instance = random_reassign_instance(rng)
        stuck = rng.sample(list(instance.capabilities.robots), 2)
        capabilities = instance.capabilities.without([(robot, 1) for robot in stuck])
        regions = sorted({p.region for p in instance.conjunct.positives})
        stationed = {robot: rng.choice(regions + [None]) for robot in stuck}
        team = teams(capabilities)
        ctx = build_context(instance.conjunct, team, capabilities, instance.failed, 1, stationed)
        try:
            path = bfs_reassign(ctx, instance.failed, team, instance.penalties)
            found = (path.cost, path.hops)
        except NoCandidate:
            found = (instance.penalties(instance.failed), 0)
        expected = brute_reassign(ctx, instance.failed, team, instance.penalties, stationed=stationed)
        assert found == expected, f"seed {seed}"


def test_hungarian_matches_bfs_violation_with_at_least_as_many_changes():
    for seed in SEEDS:
        instance = random_reassign_instance(random.Random(seed))
        _, (cost, hops) = bfs_outcome(instance)
        violation, changed, _ = hungarian_reassign(instance.conjunct, instance.capabilities,
                                                    instance.penalties, instance.mobility_skill)
        assert violation == cost, f"seed {seed}"
        assert changed >= hops, f"seed {seed}"


def test_random_instances_are_reproducible():
    a = random_reassign_instance(random.Random(7))
    b = random_reassign_instance(random.Random(7))
    assert digest(a) == digest(b)
    assert not a.capabilities.has(a.failed.robot, a.failed.skill)
    assert a.before.has(a.failed.robot, a.failed.skill)


def test_hungarian_on_a_chain_moves_every_task():
    instance = chain_instance(3)
    violation, changed, assignment = hungarian_reassign(instance.conjunct, instance.capabilities,
                                                         instance.penalties)
    assert violation == 0
    assert changed == 3
    assert assignment == {"p1": 2, "p2": 3, "p3": 4}


def test_brute_reassign_respects_its_robot_limit():
    instance = chain_instance(8)
    ctx = build_context(instance.conjunct, instance.teams, instance.capabilities, instance.failed)
    with pytest.raises(TooLarge):
        brute_reassign(ctx, instance.failed, instance.teams, instance.penalties)


def test_product_oracle_agrees_with_synthesis(corridor):
    args = (corridor.nba, corridor.world, corridor.start, corridor.capabilities, corridor.penalties)
    optimum = brute_product_plan(*args)
    assert optimum.violation == 0
    assert optimum.accepting[1] == "q1"
    assert synthesize(*args).violation == optimum.violation


def test_product_oracle_after_a_sacrifice(corridor):
    z, failed = apply_failure(corridor.capabilities, FailureEvent(0, ((1, 2),)),
                              corridor.nba.assigned_predicates(), 1)
    repaired = repair(corridor.nba, "q0", failed, teams(z), z, corridor.penalties)
    optimum = brute_product_plan(repaired.nba, corridor.world, corridor.start, z, corridor.penalties,
                                 repaired.unassigned)
    assert optimum.violation == 10
    plan = synthesize(repaired.nba, corridor.world, corridor.start, z, corridor.penalties)
    assert plan.violation == optimum.violation


def test_product_oracle_without_the_skill_finds_nothing(corridor):
    z = corridor.capabilities.without([(1, 2)])
    optimum = brute_product_plan(corridor.nba, corridor.world, corridor.start, z, corridor.penalties)
    assert math.isinf(optimum.violation)
    assert optimum.accepting is None


def test_product_oracle_refuses_large_products(relay):
    with pytest.raises(TooLarge):
        brute_product_plan(relay.nba, relay.world, relay.start, relay.capabilities,
                           relay.penalties)


def test_oracle_report():
    report = OracleReport.compare("instance", 15.0, 15.0)
    assert report.match and report.instance == digest("instance")
    assert OracleReport.compare("x", math.inf, math.inf).match
    assert not OracleReport.compare("x", math.inf, 3.0).match
    assert OracleReport.compare("x", 1.0, 1.05, tolerance=0.1).to_dict()["match"]


def test_replanning_matches_the_product_optimum_on_random_missions():
    local = guarded = 0
    for seed in MISSION_SEEDS:
        rng = random.Random(seed)
        document = random_mission_document(rng)
        scenario = scenario_from_document(document, name=f"mission-{seed}")
        plan = synthesize(scenario.nba, scenario.world, scenario.start, scenario.capabilities, scenario.penalties)
        assert plan.violation == 0, f"seed {seed}"

        target = rng.choice(sorted(scenario.nba.assigned_predicates(), key=lambda p: p.name))
        z, failed = apply_failure(scenario.capabilities, FailureEvent(0, ((target.robot, target.skill),)),
                                  scenario.nba.assigned_predicates(), 1)
        repaired = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
        args = (repaired.nba, scenario.world, z, scenario.penalties, repaired.unassigned)
        result = replan(plan, 0, *args)
        optimum = brute_product_plan(repaired.nba, scenario.world, scenario.start, z, scenario.penalties,
                                     repaired.unassigned)
        assert result.plan.violation == optimum.violation, f"seed {seed}"
        if result.mode is not ReplanMode.LOCAL:
            continue

        local += 1
        guarded += any(p["kind"] == "avoid" for p in document["predicates"].values())
        pmin = enumerate_pd(repaired.nba, "q0", repaired.unassigned, scenario.penalties)[0]
        forced = replan(plan, 0, *args, mode="global")
        assert result.plan.violation == pmin.cost == forced.plan.violation, f"seed {seed}"
        if local == LOCAL_REPLANS:
            break
    assert local == LOCAL_REPLANS
    assert guarded > 0
