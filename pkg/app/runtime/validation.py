"""
Validation - check a scenario against the planner's standing assumptions
before running it.
"""
import logging
from dataclasses import dataclass
from typing import List

from app.automaton.analysis import check_self_loops
from app.errors import Infeasible
from app.planner.search import synthesize

from .scenario import Scenario

logger = logging.getLogger(__name__)

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    level: str
    code: str
    message: str

    def to_dict(self) -> dict:
        return {"level": self.level, "code": self.code, "message": self.message}

    def __str__(self) -> str:
        return f"[{self.level}] {self.code}: {self.message}"


def _assignment(scenario: Scenario) -> List[Diagnostic]:
    found = []
    capabilities = scenario.capabilities
    holdings = capabilities.holdings()
    mobility = scenario.world.mobility_skill
    seen_conflicts = set()
    for edge in scenario.automaton.edges():
        for d, conjunct in enumerate(scenario.automaton.transitions[edge].disjuncts):
            where = f"{edge[0]}->{edge[1]}[{d}]"
            for predicate in conjunct.positives + conjunct.negated:
                if predicate.robot is None:
                    found.append(Diagnostic(ERROR, "assignment", f"{predicate.name} on {where} has no robot"))
                elif not capabilities.has(predicate.robot, predicate.skill):
                    found.append(Diagnostic(ERROR, "assignment",
                                            f"robot {predicate.robot} lacks skill {predicate.skill} for {predicate.name}"))
            for predicate in conjunct.positives:
                if predicate in conjunct.negated:
                    found.append(Diagnostic(ERROR, "assignment", f"{predicate.name} is required and forbidden on {where}"))
                    continue
                for avoid in conjunct.avoids:
                    if predicate.robot is None or not avoid.restricts(predicate.robot, holdings):
                        continue
                    if avoid.region == predicate.region and avoid.skill in (predicate.skill, mobility):
                        found.append(Diagnostic(ERROR, "assignment",
                                                f"{predicate.name} conflicts with {avoid.name} on {where}"))
            if conjunct.has_robot_conflict() and (edge, d) not in seen_conflicts:
                seen_conflicts.add((edge, d))
                robots = sorted({r for r in conjunct.assigned_robots() if conjunct.assigned_robots().count(r) > 1})
                found.append(Diagnostic(ERROR, "double-booking",
                                        f"robot(s) {robots} must satisfy two predicates at once on {where}"))
    return found


def _independence(scenario: Scenario) -> List[Diagnostic]:
    owner = {}
    found = []
    for predicate in sorted(scenario.automaton.assigned_predicates(), key=lambda p: p.name):
        if predicate.robot in owner and owner[predicate.robot] != predicate.name:
            found.append(Diagnostic(WARNING, "shared-robot",
                                    f"robot {predicate.robot} carries both {owner[predicate.robot]} and {predicate.name}"))
        owner.setdefault(predicate.robot, predicate.name)
    return found


def validate(scenario: Scenario, feasibility: bool = True) -> List[Diagnostic]:
    """
    Errors make the scenario unusable; warnings only void the optimality
    guarantees of local replanning. With `feasibility`, an offline plan is
    synthesized and must have zero violation.
    """
    found = _assignment(scenario) + _independence(scenario)

    for issue in check_self_loops(scenario.automaton):
        found.append(Diagnostic(WARNING, "self-loop", str(issue)))

    world = scenario.world
    cells = list(world.regions.values()) + list(scenario.start)
    if not world.connected(cells):
        found.append(Diagnostic(ERROR, "accessibility", "some regions or start cells are not reachable from each other"))

    if feasibility and not any(d.level == ERROR for d in found):
        try:
            plan = synthesize(scenario.nba, world, scenario.start, scenario.capabilities, scenario.penalties)
            if plan.violation > 0:
                found.append(Diagnostic(ERROR, "feasibility",
                                        f"the best offline plan still has violation {plan.violation}"))
        except Infeasible as exc:
            found.append(Diagnostic(ERROR, "feasibility", str(exc)))

    found = list(dict.fromkeys(found))
    logger.info("validated %s: %d diagnostic(s)", scenario.name, len(found))
    return found
