"""
Oracle reports - an oracle value next to the value under test.
"""
import hashlib
import math
from dataclasses import dataclass


def digest(instance) -> str:
    """Short stable fingerprint of an instance's repr."""
    return hashlib.sha256(repr(instance).encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class OracleReport:
    instance: str
    oracle: float
    subject: float
    match: bool

    @classmethod
    def compare(cls, instance, oracle: float, subject: float, tolerance: float = 0.0) -> "OracleReport":
        if math.isinf(oracle) or math.isinf(subject):
            match = oracle == subject
        else:
            match = abs(oracle - subject) <= tolerance
        return cls(digest(instance), oracle, subject, match)

    def to_dict(self) -> dict:
        return {"instance": self.instance, "oracle": self.oracle, "subject": self.subject, "match": self.match}
