"""
World model - grid, motion primitives, capabilities and failures.
"""
from .grid import Cell, Primitive, WorldModel, manhattan
from .capabilities import CapabilityMatrix, FailureEvent, apply_failure, teams

__all__ = ["Cell", "Primitive", "WorldModel", "manhattan",
           "CapabilityMatrix", "FailureEvent", "apply_failure", "teams"]
