"""
Product planner - optimal plan synthesis, plan scoring and segment synthesis.
"""
from .plan import HybridPlan, HybridState, effective_guard, minimal_cycle, plan_violation, step_violation
from .travel import TravelPlan, plan_travel
from .transitions import Firing, TransitionPlanner
from .search import synthesize
from .segments import SegmentSpec, connect

__all__ = [
    "HybridPlan", "HybridState", "effective_guard", "minimal_cycle", "plan_violation", "step_violation",
    "TravelPlan", "plan_travel", "Firing", "TransitionPlanner", "synthesize", "SegmentSpec", "connect",
]
