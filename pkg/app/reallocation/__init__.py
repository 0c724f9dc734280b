"""
Reallocation - minimum-violation task reassignment after skill failures.
"""
from .context import AssignmentContext, ForbiddenSet, build_context
from .bfs import ReassignPath, bfs_reassign, hand_overs
from .repair import ReassignmentRecord, RepairResult, repair

__all__ = [
    "AssignmentContext", "ForbiddenSet", "build_context",
    "ReassignPath", "bfs_reassign", "hand_overs",
    "ReassignmentRecord", "RepairResult", "repair",
]
