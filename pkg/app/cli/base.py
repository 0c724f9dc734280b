"""
Base class for all CLI commands.
"""
import argparse
from abc import ABC, abstractmethod

from app.config import Settings
from app.file_manager import scenario_path
from app.runtime.scenario import Scenario, load_scenario

BANNER = "=" * 60


def banner(title: str) -> None:
    print(BANNER)
    print(title)
    print(BANNER)


class BaseCommand(ABC):
    """
    Abstract base class for subcommands.

    Each command declares its arguments on a subparser and returns the
    process exit code from execute().
    """

    name: str = "base_command"
    description: str = "Base command"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("scenario", help="Scenario JSON file, or a bundled scenario name")

    @abstractmethod
    def execute(self, args: argparse.Namespace, settings: Settings) -> int:
        """
        Run the command.

        Returns:
            0 on success, 1 on validation failure, 2 on an infeasible mission
        """
        pass

    def load(self, args: argparse.Namespace, settings: Settings) -> Scenario:
        return load_scenario(scenario_path(args.scenario, settings.scenario_dir))
