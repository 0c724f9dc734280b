import argparse

from app.config import Settings
from app.file_manager import FileManager
from app.planner.search import synthesize

from .base import BaseCommand, banner


class PlanCommand(BaseCommand):
    name = "plan"
    description = "Synthesize the offline plan and write its trace"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--out", required=True, help="Trace file (JSON lines)")

    def execute(self, args: argparse.Namespace, settings: Settings) -> int:
        scenario = self.load(args, settings)
        plan = synthesize(scenario.nba, scenario.world, scenario.start, scenario.capabilities,
                          scenario.penalties, slack=settings.travel_slack)
        manager, filename = FileManager.for_file(args.out)
        path = manager.save_records(filename, plan.records())
        banner(f"Plan for {scenario.name}")
        print(f"  Prefix steps: {len(plan.prefix)}")
        print(f"  Suffix steps: {plan.K}")
        print(f"  Violation: {plan.violation:g}")
        print(f"  Saved: {path}")
        return 0
