"""
Loader - build predicate tables and automata from scenario documents.
"""
from typing import Any, Dict, List, Mapping, Tuple

from app.errors import ScenarioError
from app.formula.guard import Conjunct, GuardDNF
from app.formula.predicates import ALL, ApplyPredicate, AvoidPredicate, Predicate, parse_literal
from app.formula.violation import PenaltyMap

from .nba import Edge, Nba


def load_predicates(section: Mapping[str, Any]) -> Tuple[Dict[str, Predicate], PenaltyMap]:
    """
    Parse the predicate table.

    Args:
        section: {
            "pi1": {"kind": "apply", "skill": 5, "robot": 4, "region": "l4", "penalty": 50},
            "pi7": {"kind": "avoid", "scope_skill": 5, "subject": "all", "skill": 1, "region": "l2"}
        }

    Returns:
        (name -> predicate, penalty map of the apply predicates)
    """
    predicates: Dict[str, Predicate] = {}
    penalties: Dict[str, float] = {}
    for name, entry in section.items():
        kind = entry.get("kind", "apply")
        try:
            if kind == "apply":
                predicates[name] = ApplyPredicate(name, int(entry["skill"]), entry.get("robot"), str(entry["region"]))
                if "penalty" not in entry:
                    raise ScenarioError(f"apply predicate {name} has no penalty")
                penalties[name] = float(entry["penalty"])
            elif kind == "avoid":
                subject = entry.get("subject", ALL)
                if subject is None:
                    subject = ALL
                predicates[name] = AvoidPredicate(name, int(entry["scope_skill"]), subject,
                                                  int(entry["skill"]), str(entry["region"]))
            else:
                raise ScenarioError(f"predicate {name} has unknown kind {kind!r}")
        except KeyError as missing:
            raise ScenarioError(f"predicate {name} is missing field {missing}")
    return predicates, PenaltyMap(penalties)


def _parse_dnf(raw: Any, predicates: Mapping[str, Predicate]) -> GuardDNF:
    if raw is True or raw == "true":
        return GuardDNF.true()
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(f"dnf must be a non-empty list of literal lists, got {raw!r}")
    return GuardDNF(tuple(Conjunct.of(parse_literal(text, predicates) for text in conj) for conj in raw))


def load_nba(document: Mapping[str, Any], predicates: Mapping[str, Predicate]) -> Nba:
    """
    Build an automaton from the scenario's automaton section:
        {"states": [{"id": "q0", "initial": true, "accepting": false}, ...],
         "transitions": [{"from": "q0", "to": "q1", "dnf": [["pi:pi1", "npi:pi7"]]}, ...]}
    Two entries for the same state pair are merged into one guard.
    """
    states: List[str] = []
    initial, accepting = set(), set()
    for entry in document.get("states", []):
        state = str(entry["id"])
        if state in states:
            raise ScenarioError(f"state {state} declared twice")
        states.append(state)
        if entry.get("initial"):
            initial.add(state)
        if entry.get("accepting"):
            accepting.add(state)

    transitions: Dict[Edge, GuardDNF] = {}
    for entry in document.get("transitions", []):
        edge = (str(entry["from"]), str(entry["to"]))
        guard = _parse_dnf(entry.get("dnf", "true"), predicates)
        if edge in transitions:
            guard = GuardDNF(transitions[edge].disjuncts + guard.disjuncts)
        transitions[edge] = guard

    return Nba(tuple(states), frozenset(initial), frozenset(accepting), transitions)
