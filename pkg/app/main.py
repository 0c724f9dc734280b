"""
Planner CLI - validate, plan, simulate and repair multi-robot missions.
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from app import __version__
from app.cli import COMMAND_REGISTRY
from app.config import Settings
from app.errors import Infeasible, PlannerError, ScenarioError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m app", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Overrides PLANNER_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command_cls in COMMAND_REGISTRY.items():
        command = command_cls()
        sub = subparsers.add_parser(name, help=command.description, description=command.description)
        command.add_arguments(sub)
        sub.set_defaults(command_instance=command)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = Settings.from_env()
    configure_logging(args.log_level or settings.log_level)

    try:
        return args.command_instance.execute(args, settings)
    except Infeasible as exc:
        print(f"Mission infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ScenarioError as exc:
        print(f"Invalid scenario: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except PlannerError as exc:
        print(f"Planner error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
