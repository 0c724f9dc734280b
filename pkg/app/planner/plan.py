"""
Plans - hybrid states, prefix-suffix plans and their violation score.
"""
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from app.automaton.nba import Edge, Nba
from app.automaton.sequences import UnassignedMap
from app.formula.guard import Conjunct, GuardDNF
from app.formula.labeling import label
from app.formula.predicates import IDLE
from app.formula.violation import INF, PenaltyMap, edge_violation
from app.world.capabilities import CapabilityMatrix
from app.world.grid import Cell, WorldModel


@dataclass(frozen=True)
class HybridState:
    positions: Tuple[Cell, ...]
    skills: Tuple[int, ...]
    nba_state: str

    @classmethod
    def idle(cls, positions: Sequence[Cell], nba_state: str) -> "HybridState":
        return cls(tuple(tuple(p) for p in positions), (IDLE,) * len(positions), nba_state)

    def to_dict(self) -> dict:
        return {
            "positions": [list(p) for p in self.positions],
            "skills": list(self.skills),
            "nba_state": self.nba_state,
        }


def minimal_cycle(states: Sequence[HybridState]) -> Tuple[HybridState, ...]:
    """Shortest period p such that the cycle is its first p states repeated."""
    n = len(states)
    for period in range(1, n + 1):
        if n % period == 0 and all(states[i] == states[i % period] for i in range(n)):
            return tuple(states[:period])
    return tuple(states)


@dataclass(frozen=True)
class HybridPlan:
    """
    prefix is steps 0..T, suffix is T+1..T+K and repeats forever.
    The prefix may be empty when the plan starts on an accepting state.
    """
    prefix: Tuple[HybridState, ...]
    suffix: Tuple[HybridState, ...]
    violation: float = 0.0

    def __post_init__(self):
        if not self.suffix:
            raise ValueError("a plan needs a non-empty suffix")

    @property
    def T(self) -> int:
        return len(self.prefix) - 1

    @property
    def K(self) -> int:
        return len(self.suffix)

    @property
    def horizon(self) -> int:
        """Number of steps in one prefix plus one suffix cycle (T+K+1)."""
        return len(self.prefix) + len(self.suffix)

    @property
    def extended(self) -> Tuple[HybridState, ...]:
        """prefix + suffix + first suffix state, so the closing step has an index."""
        return self.prefix + self.suffix + (self.suffix[0],)

    def state_at(self, t: int) -> HybridState:
        if t < len(self.prefix):
            return self.prefix[t]
        return self.suffix[(t - len(self.prefix)) % self.K]

    def rebase(self, t: int) -> "HybridPlan":
        """The same infinite run seen from step t."""
        if t < len(self.prefix):
            return replace(self, prefix=self.prefix[t:])
        offset = (t - len(self.prefix)) % self.K
        return replace(self, prefix=self.suffix[offset:] if offset else ())

    def with_violation(self, violation: float) -> "HybridPlan":
        return replace(self, violation=violation)

    def records(self) -> List[dict]:
        rows = []
        for step, state in enumerate(self.prefix + self.suffix):
            row = {"step": step, "part": "prefix" if step < len(self.prefix) else "suffix"}
            row.update(state.to_dict())
            rows.append(row)
        return rows


def effective_guard(nba: Nba, edge: Edge, unassigned: Optional[UnassignedMap]) -> Optional[GuardDNF]:
    """Guard with the predicates listed in `unassigned` stripped of their robot."""
    guard = nba.guard(*edge)
    if guard is None or not unassigned:
        return guard
    disjuncts = []
    for d, conjunct in enumerate(guard.disjuncts):
        names = {p.name for p in unassigned.get((edge, d), ())}
        if names:
            conjunct = Conjunct.of(
                lit.with_predicate(lit.predicate.with_robot(None))
                if lit.is_positive and lit.predicate.name in names else lit
                for lit in conjunct.literals
            )
        disjuncts.append(conjunct)
    return GuardDNF(tuple(disjuncts))


def step_violation(plan: HybridPlan, k: int, nba: Nba, penalties: PenaltyMap, world: WorldModel,
                   capabilities: CapabilityMatrix, unassigned: Optional[UnassignedMap] = None) -> float:
    states = plan.extended
    current, following = states[k], states[k + 1]
    guard = effective_guard(nba, (current.nba_state, following.nba_state), unassigned)
    if guard is None:
        return INF
    symbol = label(current.positions, current.skills, world, capabilities)
    return edge_violation(symbol, guard, penalties)


def plan_violation(plan: HybridPlan, from_step: int, nba: Nba, penalties: PenaltyMap, world: WorldModel,
                   capabilities: CapabilityMatrix, unassigned: Optional[UnassignedMap] = None) -> float:
    """Sum of the per-step violation over steps from_step..T+K, the closing step included."""
    if not 0 <= from_step < plan.horizon:
        raise ValueError(f"from_step {from_step} outside 0..{plan.horizon - 1}")
    return sum(step_violation(plan, k, nba, penalties, world, capabilities, unassigned)
               for k in range(from_step, plan.horizon))
