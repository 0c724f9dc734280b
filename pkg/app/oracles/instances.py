"""
Random instances - single-conjunct reassignment problems with a valid
initial assignment and one failed predicate, and small chain missions
for checking replanning against the product oracle.
"""
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Set

from app.formula.guard import Conjunct
from app.formula.predicates import ApplyPredicate, AvoidPredicate, Literal, LiteralKind
from app.formula.violation import PenaltyMap
from app.world.capabilities import CapabilityMatrix, teams


@dataclass(frozen=True)
class ReassignInstance:
    conjunct: Conjunct
    before: CapabilityMatrix
    capabilities: CapabilityMatrix  # after the failure
    failed: ApplyPredicate
    penalties: PenaltyMap
    mobility_skill: int = 1

    @property
    def teams(self):
        return teams(self.capabilities)


def random_reassign_instance(rng: random.Random, robots: int = 6, skills: int = 4, tasks: int = 4,
                             regions: int = 4, avoids: int = 1, skill_rate: float = 0.5) -> ReassignInstance:
    """
    Skill 1 is mobility and held by everyone. Tasks go to distinct robots that
    hold their skill; avoid predicates never contradict the initial assignment.
    """
    tasks = min(tasks, robots)
    held: Dict[int, Set[int]] = {r: {1} | {c for c in range(2, skills + 1) if rng.random() < skill_rate}
                                 for r in range(1, robots + 1)}
    region_names = [f"l{k}" for k in range(1, regions + 1)]

    predicates: List[ApplyPredicate] = []
    penalties: Dict[str, float] = {}
    for i, robot in enumerate(sorted(rng.sample(range(1, robots + 1), tasks)), start=1):
        options = sorted(held[robot] - {1})
        if not options:
            skill = rng.randint(2, skills)
            held[robot].add(skill)
        else:
            skill = rng.choice(options)
        predicate = ApplyPredicate(f"p{i}", skill, robot, rng.choice(region_names))
        predicates.append(predicate)
        penalties[predicate.name] = float(rng.randint(1, 50))

    before = CapabilityMatrix.from_skills(robots, skills, held)
    holdings = before.holdings()
    literals = [Literal(LiteralKind.POSITIVE_APPLY, p) for p in predicates]
    for k in range(avoids):
        candidate = AvoidPredicate(f"a{k + 1}", rng.randint(1, skills), rng.choice(["all", rng.randint(1, robots)]),
                                   rng.choice([1, rng.randint(2, skills)]), rng.choice(region_names))
        clash = any(
            candidate.restricts(p.robot, holdings) and candidate.region == p.region
            and candidate.skill in (1, p.skill)
            for p in predicates
        )
        if not clash:
            literals.append(Literal(LiteralKind.AVOID, candidate))

    failed = rng.choice(predicates)
    after = before.without([(failed.robot, failed.skill)])
    return ReassignInstance(Conjunct.of(literals), before, after, failed, PenaltyMap(penalties))


def chain_instance(length: int, penalty: Optional[float] = None) -> ReassignInstance:
    """
    Robots 1..length+1 in a hand-over chain: robot k holds skills k+1 and k+2,
    task k uses skill k+2, so robot k+1 can take it over; only the last robot
    is free. Robot 1 fails on its task.
    """
    robots = length + 1
    skills = length + 2
    held = {r: {1, r + 1, r + 2} if r <= length else {1, r + 1} for r in range(1, robots + 1)}
    predicates = [ApplyPredicate(f"p{k}", k + 2, k, f"l{k}") for k in range(1, length + 1)]
    penalties = PenaltyMap({p.name: float(penalty or 10 + k) for k, p in enumerate(predicates)})
    before = CapabilityMatrix.from_skills(robots, skills, held)
    failed = predicates[0]
    after = before.without([(failed.robot, failed.skill)])
    conjunct = Conjunct.of(Literal(LiteralKind.POSITIVE_APPLY, p) for p in predicates)
    return ReassignInstance(conjunct, before, after, failed, penalties)


def random_mission_document(rng: random.Random, robots: Optional[int] = None,
                            length: Optional[int] = None) -> dict:
    """
    Scenario document for a chain mission q0 -> ... -> qn on an open grid.
    Every state loops on true or on one avoid literal that keeps some robots
    off a region, and qn is accepting. Each chain edge asks for one apply
    predicate, sometimes with an alternative, and q0 may skip straight to q2.
    Skill 1 is mobility and held by everyone; robots start off the regions.
    """
    robots = robots or rng.choice([2, 3])
    length = length or rng.randint(2, 4)
    width, height = (4, 3) if robots == 2 else (2, 2)
    skills = 4
    cells = [[x, y] for x in range(width) for y in range(height)]
    regions = {f"l{k}": cell for k, cell in enumerate(rng.sample(cells, 3), start=1)}
    open_cells = [cell for cell in cells if cell not in regions.values()]
    held: Dict[int, Set[int]] = {r: {1} | {c for c in range(2, skills + 1) if rng.random() < 0.5}
                                 for r in range(1, robots + 1)}
    predicates: Dict[str, dict] = {}

    def task() -> List[str]:
        robot = rng.randint(1, robots)
        if held[robot] == {1}:
            held[robot].add(rng.randint(2, skills))
        name = f"p{len(predicates) + 1}"
        predicates[name] = {"kind": "apply", "skill": rng.choice(sorted(held[robot] - {1})), "robot": robot,
                            "region": rng.choice(sorted(regions)), "penalty": rng.randint(1, 50)}
        return [f"pi:{name}"]

    def loop() -> object:
        if rng.random() < 0.6:
            return "true"
        name = f"a{len(predicates) + 1}"
        subject = rng.choice(["all", rng.randint(1, robots)])
        predicates[name] = {"kind": "avoid", "scope_skill": 1, "subject": subject, "skill": 1,
                            "region": rng.choice(sorted(regions))}
        return [[f"npi:{name}"]]

    transitions = [{"from": f"q{i}", "to": f"q{i}", "dnf": loop()} for i in range(length + 1)]
    for i in range(length):
        dnf = [task()]
        if rng.random() < 0.3:
            dnf.append(task())
        transitions.append({"from": f"q{i}", "to": f"q{i + 1}", "dnf": dnf})
    if length >= 2 and rng.random() < 0.3:
        transitions.append({"from": "q0", "to": "q2", "dnf": [task()]})

    return {
        "world": {"width": width, "height": height, "regions": regions, "mobility_skill": 1},
        "robots": {"skill_count": skills, "start": [rng.choice(open_cells) for _ in range(robots)],
                   "skills": {str(r): sorted(held[r]) for r in held}},
        "predicates": predicates,
        "automaton": {
            "states": [{"id": f"q{i}", "initial": i == 0, "accepting": i == length} for i in range(length + 1)],
            "transitions": transitions,
        },
    }
