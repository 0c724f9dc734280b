"""
Failure trends - final violation as the failure set grows and as the
injection step moves later.
"""
import logging
from typing import Optional, Sequence, Tuple, Union

import pandas as pd

from app.config import Settings
from app.world.capabilities import FailureEvent

from .runner import run
from .scenario import Scenario

logger = logging.getLogger(__name__)

Loss = Tuple[int, Union[int, str]]


def run_trends(scenario: Scenario, failure_sets: Optional[Sequence[Sequence[Loss]]] = None,
               steps: Optional[Sequence[int]] = None, settings: Optional[Settings] = None) -> pd.DataFrame:
    """
    One run per (failure set, step) pair, each with that set as its only
    failure. Rows are indexed by the number of robots in the set, columns by
    the injection step.
    """
    failure_sets = failure_sets if failure_sets is not None else scenario.trends.failure_sets
    steps = steps if steps is not None else scenario.trends.steps
    if not failure_sets or not steps:
        raise ValueError(f"scenario {scenario.name} defines no trend grid")

    rows = []
    for losses in failure_sets:
        size = len({robot for robot, _ in losses})
        for step in steps:
            log = run(scenario.with_failures([FailureEvent(step, tuple(losses))]), settings)
            rows.append({"failed_robots": size, "step": step, "violation": log.violation})
            logger.debug("trend %d robots @ %d -> %s", size, step, log.violation)
    frame = pd.DataFrame(rows)
    return frame.pivot(index="failed_robots", columns="step", values="violation").sort_index()


def plot_trends(table: pd.DataFrame, path: str) -> str:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    image = ax.imshow(table.values, cmap="viridis", aspect="auto")
    ax.set_xticks(range(len(table.columns)))
    ax.set_xticklabels([str(c) for c in table.columns])
    ax.set_yticks(range(len(table.index)))
    ax.set_yticklabels([str(i) for i in table.index])
    ax.set_xlabel("Injection step")
    ax.set_ylabel("Failed robots")
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            ax.text(j, i, f"{table.values[i, j]:g}", ha="center", va="center", color="white")
    fig.colorbar(image, ax=ax, label="Violation")
    plt.tight_layout()
    plt.savefig(path, dpi=150)
    plt.close(fig)
    return path
