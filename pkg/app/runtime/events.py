"""
Event log - ordered mission records written as JSON lines.
"""
from dataclasses import dataclass, field
from typing import Any, Iterator, List, Optional

from app.file_manager import encode_record

PLAN_SYNTHESIZED = "PlanSynthesized"
STEP_EXECUTED = "StepExecuted"
FAILURE_INJECTED = "FailureInjected"
EDGES_REPAIRED = "EdgesRepaired"
REASSIGNED = "Reassigned"
REPLANNED = "Replanned"
MISSION_VIOLATION = "MissionViolation"


@dataclass
class EventLog:
    records: List[dict] = field(default_factory=list)

    def emit(self, step: int, event: str, **payload: Any) -> dict:
        if self.records and step < self.records[-1]["step"]:
            raise ValueError(f"event at step {step} after step {self.records[-1]['step']}")
        record = {"step": step, "event": event}
        record.update(payload)
        self.records.append(record)
        return record

    def of(self, event: str) -> List[dict]:
        return [r for r in self.records if r["event"] == event]

    def last(self, event: str) -> Optional[dict]:
        found = self.of(event)
        return found[-1] if found else None

    @property
    def violation(self) -> Optional[float]:
        final = self.last(MISSION_VIOLATION)
        return None if final is None else final["total"]

    def lines(self) -> Iterator[str]:
        for record in self.records:
            yield encode_record(record)

    def to_jsonl(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def __len__(self) -> int:
        return len(self.records)
