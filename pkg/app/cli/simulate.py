import argparse

from app.config import Settings
from app.file_manager import FileManager
from app.replanner.replan import MODES
from app.runtime import events
from app.runtime.events import EventLog
from app.runtime.runner import run

from .base import BaseCommand, banner


def report(log: EventLog, path: str) -> None:
    for record in log.of(events.REPLANNED):
        print(f"  t={record['step']}: {record['mode']} replan, violation {record['violation']:g}")
    print(f"  Mission violation: {log.violation:g}")
    print(f"  Saved: {path}")


class SimulateCommand(BaseCommand):
    name = "simulate"
    description = "Run a scenario with its failure schedule and write the event log"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--out", required=True, help="Event log file (JSON lines)")
        parser.add_argument("--suffix-cycles", type=int, default=None, help="Suffix repetitions to execute")
        parser.add_argument("--mode", choices=MODES, default="auto", help="Replanning mode")

    def execute(self, args: argparse.Namespace, settings: Settings) -> int:
        scenario = self.load(args, settings)
        log = run(scenario, settings, suffix_cycles=args.suffix_cycles, mode=args.mode)
        manager, filename = FileManager.for_file(args.out)
        path = manager.save_records(filename, log.records)
        banner(f"Simulated {scenario.name}")
        report(log, path)
        return 0
