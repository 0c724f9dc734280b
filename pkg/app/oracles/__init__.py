"""
Oracles - exhaustive and baseline references the planner is checked against.
"""
from .edge import brute_edge_violation
from .instances import ReassignInstance, chain_instance, random_mission_document, random_reassign_instance
from .product import ProductOptimum, brute_product_plan
from .reassign import brute_reassign, hungarian_reassign
from .report import OracleReport, digest

__all__ = [
    "brute_edge_violation",
    "ReassignInstance", "chain_instance", "random_mission_document", "random_reassign_instance",
    "ProductOptimum", "brute_product_plan",
    "brute_reassign", "hungarian_reassign",
    "OracleReport", "digest",
]
