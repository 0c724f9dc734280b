"""
Reallocator Comparison Tool
Compare the BFS hand-over reallocation with a one-shot Hungarian assignment
on random single-transition instances of growing size.
Generates visualizations and statistics for comparison.
"""
import json
import random
import time
from pathlib import Path
from typing import Optional, Sequence

import matplotlib.pyplot as plt
import pandas as pd

from app.errors import NoCandidate
from app.oracles.instances import ReassignInstance, random_reassign_instance
from app.oracles.reassign import hungarian_reassign
from app.reallocation.bfs import bfs_reassign
from app.reallocation.context import build_context


def bfs_outcome(instance: ReassignInstance) -> tuple:
    """(violation, reassignments) of repairing the failed predicate by BFS."""
    ctx = build_context(instance.conjunct, instance.teams, instance.capabilities,
                        instance.failed, instance.mobility_skill)
    try:
        path = bfs_reassign(ctx, instance.failed, instance.teams, instance.penalties)
    except NoCandidate:
        return instance.penalties(instance.failed), 0
    return path.cost, path.hops


def compare_reallocators(
    sizes: Sequence[int] = (4, 8, 16, 32),
    trials: int = 20,
    seed: int = 0,
    output_dir: Optional[str] = None
) -> pd.DataFrame:
    """
    Run both reallocators on the same random instances and compare results.

    Args:
        sizes: number of tasks per instance; robots are 1.5x that
        trials: instances per size
        seed: random seed
        output_dir: Directory to save comparison outputs

    Returns:
        One row per instance with violations, reassignment counts and timings
    """
    rng = random.Random(seed)
    rows = []

    # ========== Run Both Reallocators ==========
    print("=" * 60)
    print("Running BFS and Hungarian reallocation...")
    print("=" * 60)

    for size in sizes:
        for trial in range(trials):
            instance = random_reassign_instance(
                rng, robots=size + size // 2, skills=max(4, size // 4), tasks=size,
                regions=max(4, size // 2), avoids=max(1, size // 8),
            )

            start = time.perf_counter()
            bfs_violation, bfs_count = bfs_outcome(instance)
            bfs_time = time.perf_counter() - start

            start = time.perf_counter()
            hungarian_violation, hungarian_count, _ = hungarian_reassign(
                instance.conjunct, instance.capabilities, instance.penalties, instance.mobility_skill)
            hungarian_time = time.perf_counter() - start

            rows.append({
                "size": size,
                "trial": trial,
                "bfs_violation": bfs_violation,
                "hungarian_violation": hungarian_violation,
                "bfs_reassignments": bfs_count,
                "hungarian_reassignments": hungarian_count,
                "bfs_time": bfs_time,
                "hungarian_time": hungarian_time,
            })
        print(f"Size {size}: {trials} instances")

    results = pd.DataFrame(rows)

    # ========== Comparison Statistics ==========
    print("\n" + "=" * 60)
    print("COMPARISON STATISTICS")
    print("=" * 60)

    equal = (results["bfs_violation"] == results["hungarian_violation"]).mean()
    summary = results.groupby("size").agg(
        bfs_reassignments=("bfs_reassignments", "mean"),
        hungarian_reassignments=("hungarian_reassignments", "mean"),
        bfs_time=("bfs_time", "mean"),
        hungarian_time=("hungarian_time", "mean"),
    )

    print(f"\nViolation agreement: {equal:.2%}")
    print(f"\nMean reassignments and time per instance:")
    print(summary.to_string(float_format=lambda v: f"{v:.4f}"))

    # ========== Generate Visualizations ==========
    if output_dir:
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        print("\nGenerating visualizations...")

        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(14, 6))

        ax1.plot(summary.index, summary["bfs_reassignments"], "o-", color="blue", label="BFS")
        ax1.plot(summary.index, summary["hungarian_reassignments"], "s-", color="red", label="Hungarian")
        ax1.set_title("Reassignments per failure")
        ax1.set_xlabel("Tasks in transition")
        ax1.set_ylabel("Robots reassigned")
        ax1.legend()

        ax2.plot(summary.index, summary["bfs_time"] * 1000, "o-", color="blue", label="BFS")
        ax2.plot(summary.index, summary["hungarian_time"] * 1000, "s-", color="red", label="Hungarian")
        ax2.set_title("Runtime")
        ax2.set_xlabel("Tasks in transition")
        ax2.set_ylabel("ms")
        ax2.legend()

        plt.tight_layout()
        plt.savefig(output_dir / "reallocator_comparison.png", dpi=150)
        print(f"  Saved: {output_dir / 'reallocator_comparison.png'}")

        json_results = {
            "violation_agreement": float(equal),
            "by_size": {str(size): {k: float(v) for k, v in row.items()}
                        for size, row in summary.to_dict(orient="index").items()},
        }
        with open(output_dir / "comparison_stats.json", "w") as f:
            json.dump(json_results, f, indent=2)
        print(f"  Saved: {output_dir / 'comparison_stats.json'}")

        plt.close("all")

    return results


if __name__ == "__main__":
    import sys

    if len(sys.argv) > 1 and sys.argv[1] in ("-h", "--help"):
        print("Usage: python -m app.compare_reallocators [trials] [output_dir]")
        print("\nExample:")
        print("  python -m app.compare_reallocators 20 ./reallocator_comparison")
        sys.exit(1)

    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    output_dir = sys.argv[2] if len(sys.argv) > 2 else "./reallocator_comparison"

    print(f"Trials per size: {trials}")
    print(f"Output directory: {output_dir}")
    print()

    compare_reallocators(trials=trials, output_dir=output_dir)

    print("\n" + "=" * 60)
    print("Comparison complete! Check the output directory for visualizations.")
    print("=" * 60)
