"""
Errors - exception hierarchy shared by every planner module.
"""


class PlannerError(Exception):
    """Root of all planner errors."""


class ScenarioError(PlannerError, ValueError):
    """A scenario document is malformed or inconsistent."""


class UnknownPredicate(ScenarioError):
    """A guard references a predicate that was never declared."""


class DanglingState(ScenarioError):
    """A transition references an undeclared automaton state."""


class NoInitialState(ScenarioError):
    pass


class NoAcceptingState(ScenarioError):
    pass


class PositionOutOfBounds(PlannerError, ValueError):
    """A robot position lies outside the grid or on an obstacle."""


class SkillNotPossessed(PlannerError):
    """A robot applies a skill it does not (or no longer) hold."""


class IllegalMove(PlannerError):
    """A motion primitive leads off the grid or into an obstacle."""


class NoAcceptingPath(PlannerError):
    """No accepting state is reachable from the current automaton state."""


class Infeasible(PlannerError):
    """No accepting run can be realized in the world."""


class InfeasibleMission(Infeasible):
    """Replanning after a failure could not produce any plan."""


class SegmentInfeasible(PlannerError):
    """A corridor-restricted plan segment cannot be built."""


class FailedPredicateAbsent(PlannerError):
    """The failed predicate does not occur in the conjunct being repaired."""


class NoCandidate(PlannerError):
    """No reassignment beats sacrificing the failed predicate itself."""


class TooLarge(PlannerError):
    """An exhaustive oracle was asked to search a space beyond its cap."""
