"""
Command registry for the planner CLI.
"""
from .plan import PlanCommand
from .repair import RepairCommand
from .simulate import SimulateCommand
from .trends import TrendsCommand
from .validate import ValidateCommand

COMMAND_REGISTRY = {
    # Offline
    "validate": ValidateCommand,
    "plan": PlanCommand,

    # Online
    "simulate": SimulateCommand,
    "repair": RepairCommand,

    # Experiments
    "trends": TrendsCommand,
}

__all__ = ["COMMAND_REGISTRY"]
