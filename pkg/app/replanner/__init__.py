"""
Replanner - projection of plans onto the automaton, true overlap and plan
stitching after a repair.
"""
from .overlap import OverlapEdge, TrueOverlap, true_overlap
from .projection import PREFIX, SUFFIX, PlanProjection, ProjectedEdge, project_plan
from .replan import MODES, ReplanMode, ReplanReport, ReplanResult, replan

__all__ = [
    "OverlapEdge",
    "TrueOverlap",
    "true_overlap",
    "PREFIX",
    "SUFFIX",
    "PlanProjection",
    "ProjectedEdge",
    "project_plan",
    "MODES",
    "ReplanMode",
    "ReplanReport",
    "ReplanResult",
    "replan",
]
