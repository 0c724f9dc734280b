import os
import json
import math
from pathlib import Path
from typing import Iterable, Optional, Tuple, Union

from app.errors import ScenarioError


def _finite(value):
    """JSON has no infinity; costs that are infinite are written as the string "inf"."""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def encode_record(record: dict) -> str:
    """One JSON line with the record's own key order."""
    return json.dumps(_finite(record), ensure_ascii=False)


def read_document(path: Union[str, Path]) -> dict:
    """Loads a scenario document, raising ScenarioError on missing or broken files."""
    path = Path(path)
    if not path.exists():
        raise ScenarioError(f"scenario file {path} does not exist")
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}")


def scenario_path(name: str, scenario_dir: Union[str, Path]) -> Path:
    """A path as given if it exists, otherwise <name>(.json) inside the scenario directory."""
    candidate = Path(name)
    if candidate.exists():
        return candidate
    for option in (Path(scenario_dir) / name, Path(scenario_dir) / f"{name}.json"):
        if option.exists():
            return option
    return candidate


class FileManager:
    def __init__(self, output_dir: str):
        self.output_dir = output_dir
        self._ensure_output_dir()

    def _ensure_output_dir(self):
        """Creates the output directory if it doesn't exist."""
        if not os.path.exists(self.output_dir):
            os.makedirs(self.output_dir)

    def save_records(self, filename: str, records: Iterable[dict]) -> str:
        """Saves records as JSON lines, one record per line."""
        filepath = os.path.join(self.output_dir, filename)
        with open(filepath, "w", encoding="utf-8") as f:
            for record in records:
                f.write(encode_record(record) + "\n")
        return filepath

    def save_json(self, filename: str, data: dict) -> str:
        """Saves dictionary as JSON file."""
        filepath = os.path.join(self.output_dir, filename)
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(_finite(data), f, ensure_ascii=False, indent=2)
        return filepath

    def load_records(self, filename: str) -> Optional[list]:
        """Loads JSON-lines records from a file."""
        filepath = os.path.join(self.output_dir, filename)
        if not os.path.exists(filepath):
            return None
        with open(filepath, "r", encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]

    def exists(self, filename: str) -> bool:
        """Checks if a file exists in the output directory."""
        return os.path.exists(self.get_path(filename))

    def get_path(self, filename: str) -> str:
        """Returns the path to a file in the output directory."""
        return os.path.join(self.output_dir, filename)

    @classmethod
    def for_file(cls, path: Union[str, Path]) -> Tuple["FileManager", str]:
        """Manager for the parent directory of `path`, plus the file name."""
        path = Path(path)
        return cls(str(path.parent)), path.name
