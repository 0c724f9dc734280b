"""
Runtime - scenarios, the execute/fail/repair/replan loop, validation and
experiments.
"""
from .events import EventLog
from .runner import run
from .scenario import Scenario, TrendGrid, load_scenario, parse_failures, scenario_from_document
from .trends import plot_trends, run_trends
from .validation import Diagnostic, validate

__all__ = [
    "EventLog",
    "run",
    "Scenario", "TrendGrid", "load_scenario", "parse_failures", "scenario_from_document",
    "plot_trends", "run_trends",
    "Diagnostic", "validate",
]
