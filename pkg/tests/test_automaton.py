"""
Automaton loading, pruning, reachability and (P, D) sequence enumeration
"""
import copy
from dataclasses import replace

import pytest

from app.automaton import check_self_loops, enumerate_pd, failed_edges, load_nba, prune, reachable_from
from app.errors import DanglingState, NoAcceptingPath, NoAcceptingState, ScenarioError, UnknownPredicate
from app.oracles import brute_product_plan
from app.reallocation import repair
from app.runtime.scenario import scenario_from_document
from app.world.capabilities import FailureEvent, apply_failure, teams
from tests.conftest import corridor_document


def test_relay_loads_with_merged_guards(relay):
    nba = relay.nba
    assert nba.initial == frozenset({"q0"})
    assert nba.accepting == frozenset({"q3", "q4"})
    assert len(nba.edges()) == 12
    assert nba.successors("q0") == ["q0", "q1", "q2", "q3", "q4"]


def test_duplicate_transition_entries_merge_into_one_guard(relay):
    section = {
        "states": [{"id": "a", "initial": True, "accepting": True}],
        "transitions": [
            {"from": "a", "to": "a", "dnf": [["npi:pi7"]]},
            {"from": "a", "to": "a", "dnf": [["npi:pi2"]]},
        ],
    }
    nba = load_nba(section, relay.predicates)
    assert len(nba.self_loop("a").disjuncts) == 2


@pytest.mark.parametrize("section, error", [
    ({"states": [{"id": "a", "initial": True}], "transitions": []}, NoAcceptingState),
    ({"states": [{"id": "a", "initial": True, "accepting": True}],
      "transitions": [{"from": "a", "to": "b", "dnf": "true"}]}, DanglingState),
    ({"states": [{"id": "a", "initial": True, "accepting": True}],
      "transitions": [{"from": "a", "to": "a", "dnf": [["pi:nope"]]}]}, UnknownPredicate),
    ({"states": [{"id": "a", "initial": True, "accepting": True}],
      "transitions": [{"from": "a", "to": "a", "dnf": []}]}, ScenarioError),
])
def test_loader_rejects_broken_automata(relay, section, error):
    with pytest.raises(error):
        load_nba(section, relay.predicates)


def test_prune_drops_conjuncts_that_overload_a_robot(relay_document):
    document = copy.deepcopy(relay_document)
    document["predicates"]["pi8"] = {"kind": "apply", "skill": 1, "robot": 4, "region": "l1", "penalty": 5}
    document["automaton"]["transitions"].append(
        {"from": "q1", "to": "q3", "dnf": [["pi:pi1", "pi:pi8"]]})
    scenario = scenario_from_document(document)
    assert len(scenario.automaton.guard("q1", "q3").disjuncts) == 2
    pruned = prune(scenario.automaton)
    assert len(pruned.guard("q1", "q3").disjuncts) == 1
    assert not any(c.has_robot_conflict() for g in pruned.transitions.values() for c in g.disjuncts)


def test_prune_removes_transitions_left_without_conjuncts(relay_document):
    document = copy.deepcopy(relay_document)
    document["predicates"]["pi8"] = {"kind": "apply", "skill": 1, "robot": 4, "region": "l1", "penalty": 5}
    document["automaton"]["transitions"].append({"from": "q2", "to": "q3", "dnf": [["pi:pi1", "pi:pi8"]]})
    scenario = scenario_from_document(document)
    assert scenario.automaton.guard("q2", "q3") is not None
    assert scenario.nba.guard("q2", "q3") is None


def test_relay_self_loops_are_avoid_only(relay):
    assert check_self_loops(relay.nba) == []


def test_self_loop_with_apply_literal_is_reported(relay_document):
    document = copy.deepcopy(relay_document)
    for entry in document["automaton"]["transitions"]:
        if entry["from"] == entry["to"] == "q3":
            entry["dnf"] = [["pi:pi4", "npi:pi7"]]
    issues = check_self_loops(scenario_from_document(document).nba)
    assert [issue.state for issue in issues] == ["q3"]
    assert issues[0].offending == ("pi:pi4",)


def test_reachability(relay):
    assert reachable_from(relay.nba, "q1") == frozenset({"q1", "q3", "q4"})
    assert reachable_from(relay.nba, "q3") == frozenset({"q3"})
    with pytest.raises(KeyError):
        reachable_from(relay.nba, "q9")


def test_robot_two_failure_touches_five_edges(relay):
    pi5 = relay.predicates["pi5"]
    found = failed_edges(relay.nba, "q0", pi5)
    assert len(found) == 5
    assert set(found.edges) == {("q0", "q2"), ("q0", "q3"), ("q0", "q4"), ("q1", "q3"), ("q1", "q4")}
    assert len(failed_edges(relay.nba, "q3", pi5)) == 0


def test_enumerate_pd_lists_every_lasso_in_order(relay):
    sequences = enumerate_pd(relay.nba, "q0", {}, relay.penalties)
    assert len(sequences) == 5
    assert all(s.cost == 0 for s in sequences)
    first = sequences[0]
    assert first.path == ("q0", "q1", "q3", "q3")
    assert first.prefix == ("q0", "q1", "q3")
    assert first.suffix == ("q3", "q3")
    assert first.accepting_state == "q3"
    assert [first.in_prefix(m) for m in range(3)] == [True, True, False]


def test_enumerate_pd_charges_unassigned_predicates(relay):
    pi6 = relay.predicates["pi6"].with_robot(None)
    unassigned = {(("q0", "q3"), 0): frozenset({pi6})}
    sequences = enumerate_pd(relay.nba, "q0", unassigned, relay.penalties)
    charged = [s for s in sequences if ("q0", "q3") in [e for e, _ in s.edges()]]
    assert [s.cost for s in charged] == [15]
    assert sequences[-1].cost == 15


def test_enumerate_pd_from_accepting_state_with_only_a_self_loop(relay):
    sequences = enumerate_pd(relay.nba, "q3", {}, relay.penalties)
    assert [(s.path, s.split) for s in sequences] == [(("q3", "q3"), 1)]


def test_enumerate_pd_without_accepting_cycle(relay):
    nba = relay.nba
    without_loops = {e: g for e, g in nba.transitions.items() if e[0] != e[1] or e[0] not in nba.accepting}
    with pytest.raises(NoAcceptingPath):
        enumerate_pd(replace(nba, transitions=without_loops), "q0", {}, relay.penalties)


def test_prune_is_idempotent_and_leaves_the_relay_alone(relay, relay_document):
    assert prune(relay.automaton) == relay.automaton
    assert prune(relay.nba) == relay.nba

    document = copy.deepcopy(relay_document)
    document["predicates"]["pi8"] = {"kind": "apply", "skill": 1, "robot": 4, "region": "l1", "penalty": 5}
    document["automaton"]["transitions"].append({"from": "q1", "to": "q3", "dnf": [["pi:pi1", "pi:pi8"]]})
    overloaded = scenario_from_document(document).automaton
    once = prune(overloaded)
    assert once != overloaded
    assert prune(once) == once


def parallel_routes_document():
    """Two ways into the accepting qf: robot 1 welds on one, robot 2 marks on the other."""
    document = corridor_document(2)
    document["world"]["regions"]["side"] = [0, 1]
    document["robots"]["skill_count"] = 3
    document["robots"]["skills"] = {"1": [1, 2], "2": [1, 3]}
    document["predicates"] = {
        "weld": {"kind": "apply", "skill": 2, "robot": 1, "region": "goal", "penalty": 7},
        "mark": {"kind": "apply", "skill": 3, "robot": 2, "region": "side", "penalty": 5},
    }
    document["automaton"] = {
        "states": [{"id": "q0", "initial": True}, {"id": "qa"}, {"id": "qb"},
                   {"id": "qf", "accepting": True}],
        "transitions": [
            {"from": "q0", "to": "q0", "dnf": "true"},
            {"from": "q0", "to": "qa", "dnf": [["pi:weld"]]},
            {"from": "q0", "to": "qb", "dnf": [["pi:mark"]]},
            {"from": "qa", "to": "qf", "dnf": "true"},
            {"from": "qb", "to": "qf", "dnf": "true"},
            {"from": "qf", "to": "qf", "dnf": "true"},
        ],
    }
    return document


def test_enumerate_pd_on_parallel_routes_matches_the_product_optimum():
    scenario = scenario_from_document(parallel_routes_document())
    z, failed = apply_failure(scenario.capabilities, FailureEvent(0, ((1, 2),)),
                              scenario.nba.assigned_predicates(), 1)
    repaired = repair(scenario.nba, "q0", failed, teams(z), z, scenario.penalties)
    sequences = enumerate_pd(repaired.nba, "q0", repaired.unassigned, scenario.penalties)
    assert [s.cost for s in sequences] == [0, 7]
    assert sequences[0].path == ("q0", "qb", "qf", "qf")
    optimum = brute_product_plan(repaired.nba, scenario.world, scenario.start, z, scenario.penalties,
                                 repaired.unassigned)
    assert sequences[0].cost == optimum.violation
