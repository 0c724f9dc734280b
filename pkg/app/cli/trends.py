import argparse

from app.config import Settings
from app.file_manager import FileManager
from app.runtime.trends import plot_trends, run_trends

from .base import BaseCommand, banner


class TrendsCommand(BaseCommand):
    name = "trends"
    description = "Final violation for nested failure sets injected at several steps"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--out", default=None, help="Directory for trends.json and trends.png")

    def execute(self, args: argparse.Namespace, settings: Settings) -> int:
        scenario = self.load(args, settings)
        table = run_trends(scenario, settings=settings)
        banner(f"Failure trends for {scenario.name}")
        print(table.to_string())
        if args.out:
            manager = FileManager(args.out)
            rows = {str(size): {str(step): float(value) for step, value in row.items()}
                    for size, row in table.to_dict(orient="index").items()}
            print(f"\n  Saved: {manager.save_json('trends.json', rows)}")
            print(f"  Saved: {plot_trends(table, manager.get_path('trends.png'))}")
        return 0
