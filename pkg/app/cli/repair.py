import argparse
from typing import List, Tuple, Union

from app.config import Settings
from app.file_manager import FileManager
from app.formula.predicates import ALL
from app.replanner.replan import MODES
from app.runtime.runner import run
from app.world.capabilities import FailureEvent

from .base import BaseCommand, banner
from .simulate import report


def parse_losses(text: str) -> List[Tuple[int, Union[int, str]]]:
    """Parse "2:3,4:all" into [(2, 3), (4, "all")]."""
    losses = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            robot, skill = item.split(":")
            losses.append((int(robot), ALL if skill.strip() == ALL else int(skill)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected robot:skill, got {item!r}")
    if not losses:
        raise argparse.ArgumentTypeError("no failures given")
    return losses


class RepairCommand(BaseCommand):
    name = "repair"
    description = "Inject one failure at a given step instead of the scenario's schedule"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--at", type=int, required=True, help="Failure step")
        parser.add_argument("--fail", type=parse_losses, required=True, help="robot:skill[,robot:skill...]")
        parser.add_argument("--out", required=True, help="Event log file (JSON lines)")
        parser.add_argument("--mode", choices=MODES, default="auto", help="Replanning mode")

    def execute(self, args: argparse.Namespace, settings: Settings) -> int:
        scenario = self.load(args, settings).with_failures([FailureEvent(args.at, tuple(args.fail))])
        log = run(scenario, settings, mode=args.mode)
        manager, filename = FileManager.for_file(args.out)
        path = manager.save_records(filename, log.records)
        banner(f"Repaired {scenario.name} after failure at t={args.at}")
        report(log, path)
        return 0
