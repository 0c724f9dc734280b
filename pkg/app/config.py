"""
Configuration - settings read from the environment (and a local .env file).
"""
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

BUNDLED_SCENARIOS = Path(__file__).parent / "scenarios"


def _int_env(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    suffix_cycles: int = 2
    log_level: str = "WARNING"
    scenario_dir: Path = BUNDLED_SCENARIOS
    travel_slack: int = 0  # 0 = derive from the grid size

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        settings = cls(
            suffix_cycles=_int_env("PLANNER_SUFFIX_CYCLES", cls.suffix_cycles),
            log_level=os.getenv("PLANNER_LOG_LEVEL", cls.log_level).upper(),
            scenario_dir=Path(os.getenv("PLANNER_SCENARIO_DIR", str(BUNDLED_SCENARIOS))),
            travel_slack=_int_env("PLANNER_TRAVEL_SLACK", cls.travel_slack),
        )
        if settings.suffix_cycles < 1:
            raise ValueError("PLANNER_SUFFIX_CYCLES must be at least 1")
        return settings
