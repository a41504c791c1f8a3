"""
chowcheck - Verification Toolkit

Main entry point. Runs one verification command for the surface parameters
(N, A, lambda1, lambda2) and writes a JSON report to stdout, and to --json
if given. Exit status is 0 iff every check passes.

Usage:
    python chowcheck.py validate --N 5 --A 2 --lambda1 1/2 --lambda2 1/4
    python chowcheck.py rank-delta --N 7 --A 3
    python chowcheck.py report-all --jobs 4 --json report.json
    python chowcheck.py validate --N 11 --list-A
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from dotenv import load_dotenv
from pydantic import ValidationError

from src.backend import __version__
from src.backend.checks import COMMANDS, checks_for
from src.backend.params import admissible_A
from src.backend.report import Report, ReportParams
from src.config import ToolkitConfig, get_config, load_config
from src.utils.factories import create_check_context, create_check_handler
from src.utils.logger import get_logger, set_console_level
from src.utils.retry import retry

logger = get_logger("chowcheck")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chowcheck",
        description="Exact and numeric verification of the cycle, operator and rank statements.",
    )
    parser.add_argument("command", choices=list(COMMANDS), help="Verification to run")
    parser.add_argument("--N", type=int, default=None, help="Cover degree")
    parser.add_argument("--A", type=int, default=None, help="Branch exponent")
    parser.add_argument("--lambda1", default=None, help="First parameter, p/q or decimal")
    parser.add_argument("--lambda2", default=None, help="Second parameter, p/q or decimal")
    parser.add_argument("--precision", type=int, default=None, help="Working precision in digits")
    parser.add_argument("--tolerance", type=float, default=None, help="Picard-Fuchs residual tolerance")
    parser.add_argument("--seed", type=int, default=None, help="Seed of every random choice")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes")
    parser.add_argument("--json", type=Path, default=None, help="Also write the report to this path")
    parser.add_argument("--config", type=Path, default=None, help="Path to config.yaml")
    parser.add_argument("--list-A", action="store_true", help="List admissible A for --N and exit")
    parser.add_argument("--no-fd", action="store_true", help="Skip the finite-difference sweep")
    parser.add_argument("--no-timing", action="store_true", help="Omit elapsed_ms from the report")
    parser.add_argument("--log-level", default=None, help="Console log level (stderr)")
    return parser


def apply_overrides(config: ToolkitConfig, args: argparse.Namespace) -> ToolkitConfig:
    """Flags override configuration values for this run."""
    data = config.model_dump()
    if args.precision is not None:
        data["numerics"]["precision"] = args.precision
    if args.tolerance is not None:
        data["numerics"]["tolerance"] = args.tolerance
    if args.seed is not None:
        data["verification"]["seed"] = args.seed
    if args.jobs is not None:
        data["verification"]["jobs"] = args.jobs
    if args.no_fd:
        data["numerics"]["finite_difference_check"] = False
    return ToolkitConfig(**data)


@retry(max_retries=2, retryable_exceptions=(OSError,))
def write_report(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")


def cli_run(args: argparse.Namespace, config: ToolkitConfig) -> Report:
    """Run the checks of args.command and assemble the report."""
    context = create_check_context(config, args.N, args.A, args.lambda1, args.lambda2)
    handler = create_check_handler()

    records = []
    if args.command != "validate":
        validation = handler.execute("validate", context)
        if not validation.passed:
            records = [validation]
    if not records:
        names = checks_for(args.command, context.finite_differences)
        records = handler.run_many(names, context, config.verification.jobs)

    return Report(
        command=args.command,
        params=ReportParams(N=context.N, A=context.A, lambda1=context.lambda1, lambda2=context.lambda2),
        checks=records,
        version=__version__,
        seed=context.seed,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for chowcheck."""
    load_dotenv()
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config) if args.config else get_config()
        config = apply_overrides(config, args)
    except (ValueError, ValidationError) as e:
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        return 2

    set_console_level(args.log_level or config.logging.level)

    if args.list_A:
        N = args.N if args.N is not None else config.defaults.N
        print(json.dumps({"N": N, "admissible_A": admissible_A(N)}))
        return 0

    report = cli_run(args, config)
    text = report.to_json(include_timing=not args.no_timing)
    print(text)
    if args.json is not None:
        try:
            write_report(args.json, text)
        except OSError as e:
            logger.error(f"Could not write report to {args.json}: {e}")
            return 1

    logger.info(f"{args.command}: {report.summary()}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
