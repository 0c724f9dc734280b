"""
Product-graph oracle - uniform-cost search over every team configuration
crossed with every automaton state, with no corridor restrictions.
"""
import heapq
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from app.automaton.nba import Edge, Nba
from app.errors import TooLarge
from app.formula.guard import Conjunct, GuardDNF
from app.formula.predicates import ApplyPredicate, IDLE
from app.formula.symbols import Atom, Symbol
from app.formula.violation import INF, PenaltyMap
from app.world.capabilities import CapabilityMatrix
from app.world.grid import Cell, WorldModel

logger = logging.getLogger(__name__)

STATE_LIMIT = 1_000_000

Node = Tuple[Tuple[Cell, ...], str]


@dataclass(frozen=True)
class ProductOptimum:
    violation: float
    accepting: Optional[Node]
    settled: int


def _strip(guard: GuardDNF, edge: Edge, unassigned: Mapping) -> GuardDNF:
    disjuncts = []
    for d, conjunct in enumerate(guard.disjuncts):
        names = {p.name for p in unassigned.get((edge, d), ())}
        disjuncts.append(Conjunct.of(
            lit.with_predicate(lit.predicate.with_robot(None))
            if lit.is_positive and lit.predicate.name in names else lit
            for lit in conjunct.literals
        ))
    return GuardDNF(tuple(disjuncts))


def _score(symbol: Symbol, guard: GuardDNF, penalties: PenaltyMap) -> Tuple[bool, float]:
    """(some disjunct is enabled, cheapest completion over all disjuncts)"""
    enabled, best = False, INF
    for conjunct in guard.disjuncts:
        if any(symbol.matches(p) for p in conjunct.negated) or any(symbol.violates(a) for a in conjunct.avoids):
            continue
        missing = {p for p in conjunct.positives if not symbol.matches(p)}
        if missing & set(conjunct.negated):
            continue
        best = min(best, sum(penalties(p) for p in missing))
        if all(p.robot is None for p in missing):
            enabled = True
    return enabled, best


class _Product:
    def __init__(self, nba: Nba, world: WorldModel, capabilities: CapabilityMatrix, penalties: PenaltyMap,
                 unassigned: Mapping):
        self.nba = nba
        self.world = world
        self.capabilities = capabilities
        self.penalties = penalties
        self.guards = {edge: _strip(nba.transitions[edge], edge, unassigned) for edge in nba.edges()}
        self.holdings = capabilities.holdings()

    def symbols(self, positions: Tuple[Cell, ...]) -> Iterable[Symbol]:
        options: List[List[Tuple[int, Optional[str]]]] = []
        presence = set()
        for robot, cell in enumerate(positions, start=1):
            region = self.world.region_at(cell)
            choices = [(IDLE, region)]
            if region is not None:
                presence.add((robot, region))
                choices += [(skill, region) for skill in sorted(self.capabilities.skills_of(robot))
                            if skill != self.world.mobility_skill]
            options.append(choices)
        for combo in itertools.product(*options):
            atoms = frozenset(Atom(robot, skill, region) for robot, (skill, region) in enumerate(combo, start=1)
                              if skill != IDLE)
            yield Symbol(atoms, frozenset(presence), self.holdings, self.world.mobility_skill)

    def successors(self, node: Node) -> List[Tuple[float, Node]]:
        positions, state = node
        costs: Dict[str, float] = {}
        symbols = list(self.symbols(positions))
        for target in self.nba.successors(state):
            guard = self.guards[(state, target)]
            best = INF
            for symbol in symbols:
                enabled, cost = _score(symbol, guard, self.penalties)
                if enabled:
                    best = min(best, cost)
            if best < INF:
                costs[target] = best
        if not costs:
            return []
        mobility = self.world.mobility_skill
        moves = [self.world.moves(cell) if mobility is None or self.capabilities.has(robot, mobility) else [cell]
                 for robot, cell in enumerate(positions, start=1)]
        result = []
        for following in itertools.product(*moves):
            for target, cost in costs.items():
                result.append((cost, (tuple(following), target)))
        return result

    def dijkstra(self, sources: Iterable[Node], stop: float = INF) -> Dict[Node, float]:
        dist: Dict[Node, float] = {}
        heap = [(0.0, i, s) for i, s in enumerate(sources)]
        heapq.heapify(heap)
        counter = itertools.count(len(heap))
        while heap:
            cost, _, node = heapq.heappop(heap)
            if node in dist or cost >= stop:
                continue
            dist[node] = cost
            for step, nxt in self.successors(node):
                if nxt not in dist:
                    heapq.heappush(heap, (cost + step, next(counter), nxt))
        return dist

    def cycle(self, node: Node, stop: float) -> float:
        """Cheapest non-empty path from node back to itself."""
        best = INF
        seeds = []
        for step, nxt in self.successors(node):
            if nxt == node:
                best = min(best, step)
            else:
                seeds.append((step, nxt))
        dist: Dict[Node, float] = {}
        counter = itertools.count()
        heap = [(step, next(counter), nxt) for step, nxt in seeds]
        heapq.heapify(heap)
        while heap:
            cost, _, current = heapq.heappop(heap)
            if cost >= min(best, stop):
                break
            if current in dist:
                continue
            dist[current] = cost
            for step, nxt in self.successors(current):
                if nxt == node:
                    best = min(best, cost + step)
                elif nxt not in dist:
                    heapq.heappush(heap, (cost + step, next(counter), nxt))
        return best


def brute_product_plan(nba: Nba, world: WorldModel, start: Iterable[Cell], capabilities: CapabilityMatrix,
                       penalties: PenaltyMap, unassigned: Optional[Mapping] = None,
                       initial: Optional[Iterable[str]] = None, limit: int = STATE_LIMIT) -> ProductOptimum:
    """
    Optimal prefix-plus-cycle violation over the full product graph.

    Raises:
        TooLarge: free cells ** robots * automaton states exceeds `limit`
    """
    size = len(world.free_cells()) ** world.robot_count * len(nba.states)
    if size > limit:
        raise TooLarge(f"product graph has {size} states, limit is {limit}")
    product = _Product(nba, world, capabilities, penalties, unassigned or {})
    positions = tuple(tuple(c) for c in start)
    sources = [(positions, q) for q in sorted(initial if initial is not None else nba.initial)]
    dist = product.dijkstra(sources)

    best, winner = INF, None
    for node, cost in sorted(dist.items(), key=lambda item: (item[1], repr(item[0]))):
        if cost >= best:
            break
        if node[1] not in nba.accepting:
            continue
        total = cost + product.cycle(node, best - cost)
        if total < best:
            best, winner = total, node
    logger.debug("product oracle: %d settled, optimum %s", len(dist), best)
    return ProductOptimum(best, winner, len(dist))
