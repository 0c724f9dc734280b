import argparse

from app.config import Settings
from app.runtime.validation import ERROR, validate

from .base import BaseCommand, banner


class ValidateCommand(BaseCommand):
    name = "validate"
    description = "Check a scenario against the planning assumptions"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--skip-feasibility", action="store_true",
                            help="Do not synthesize an offline plan")

    def execute(self, args: argparse.Namespace, settings: Settings) -> int:
        scenario = self.load(args, settings)
        diagnostics = validate(scenario, feasibility=not args.skip_feasibility)
        banner(f"Validating {scenario.name}")
        for diagnostic in diagnostics:
            print(f"  {diagnostic}")
        errors = sum(1 for d in diagnostics if d.level == ERROR)
        print(f"\n{errors} error(s), {len(diagnostics) - errors} warning(s)")
        return 1 if errors else 0
