"""Command-line entry point: ``aqc-cavity <command> [options]``."""

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from .. import __version__
from ..exceptions import AqcCavityError, ConfigError, EmptyResultError, IntegrationError
from ..models.config.run_config import RunConfig, load_config, load_preset, preset_names
from .commands import cmd_ec, run_config

logger = logging.getLogger("aqc_cavity.cli")

WORKERS_ENV = "AQC_CAVITY_WORKERS"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_EMPTY = 2
EXIT_INTEGRATION = 3


def configure_logging(verbose: int = 0, quiet: bool = False) -> None:
    """Configure root logging once for the process."""
    if quiet:
        level = logging.WARNING
    elif verbose >= 1:
        level = logging.DEBUG
    else:
        level = logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def resolve_workers(requested: int | None) -> int:
    """Worker count from --workers, else AQC_CAVITY_WORKERS, else 1.

    Raises:
        ConfigError: If the value is not a positive integer
    """
    if requested is None:
        raw = os.environ.get(WORKERS_ENV)
        if raw is None or not raw.strip():
            return 1
        try:
            requested = int(raw)
        except ValueError as e:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from e
    if requested < 1:
        raise ConfigError(f"Worker count must be >= 1, got {requested}")
    return requested


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per batch command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="Output directory (overrides the config)")
    common.add_argument(
        "--workers", type=int, help=f"Worker processes for sweeps (default: ${WORKERS_ENV} or 1)"
    )
    common.add_argument("--dt", type=float, help="Integration step (overrides the schedule)")
    common.add_argument("--tmax", type=float, help="Integration horizon (overrides the schedule)")
    common.add_argument("--seed", type=int, help="Seed for generated EC instances")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")

    parser = argparse.ArgumentParser(
        prog="aqc-cavity",
        description="Cavity-assisted adiabatic evolution: stationary analysis and dynamics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, summary in (
        ("stationary", "Stationary points and bifurcations over a control sweep"),
        ("protocol", "Run the switching protocol (single value or sweep)"),
        ("analyze", "Ground-state observables, spectrum and feasibility report"),
    ):
        command = sub.add_parser(name, parents=[common], help=summary, description=summary)
        command.add_argument("--config", type=Path, required=True, help="Run configuration JSON")

    preset = sub.add_parser(
        "preset", parents=[common], help="Run a shipped preset", description="Run a shipped preset"
    )
    preset.add_argument("name", nargs="?", help="Preset name")
    preset.add_argument("--list", action="store_true", help="List the available presets")
    preset.add_argument(
        "--command",
        dest="preset_command",
        choices=("stationary", "protocol", "analyze"),
        help="Run a different command on the preset parameters",
    )

    ec = sub.add_parser(
        "ec",
        parents=[common],
        help="Inspect an Exact Cover instance",
        description="Inspect an Exact Cover instance",
    )
    source = ec.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--instance", type=Path, help="Instance file or shipped instance name (exact-cover-6.txt)"
    )
    source.add_argument("--clauses", help='Clause text, e.g. "1 2 5; 2 3 6"')
    source.add_argument("--generate", nargs=2, type=int, metavar=("N", "M"), help="Random instance")
    ec.add_argument("--unique", action="store_true", help="Require a unique solution")
    ec.add_argument("--bx", type=float, default=0.5, help="B_x for the gap scan")
    ec.add_argument("--j0", type=float, default=0.25, help="J_0 for the gap scan")
    return parser


def _configured(args: argparse.Namespace) -> tuple[RunConfig, str]:
    if args.command == "preset":
        if not args.name:
            raise ConfigError("Give a preset name (or --list)")
        config = load_preset(args.name)
        command = args.preset_command or config.command
        if command is None:
            raise ConfigError(f"Preset {args.name!r} names no command")
    else:
        config = load_config(args.config)
        command = args.command
    config = config.with_overrides(output_dir=args.out, dt=args.dt, t_max=args.tmax, seed=args.seed)
    return config, command


def run(args: argparse.Namespace) -> int:
    """Execute parsed arguments and return the exit code."""
    if args.command == "preset" and args.list:
        for name in preset_names():
            print(name)
        return EXIT_OK

    if args.command == "ec":
        return cmd_ec(
            instance_path=args.instance,
            clauses=args.clauses,
            generate=(args.generate[0], args.generate[1]) if args.generate else None,
            seed=args.seed if args.seed is not None else 0,
            unique=args.unique,
            b_x=args.bx,
            j0=args.j0,
            output_dir=args.out,
            on_progress=logger.info,
        )

    config, command = _configured(args)
    workers = resolve_workers(args.workers)
    logger.info("Running %s into %s with %d worker(s)", command, config.output_dir, workers)
    return run_config(config, command, workers=workers, on_progress=logger.info)


def main(argv: Sequence[str] | None = None) -> int:
    """Console-script entry point."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return run(args)
    except IntegrationError as e:
        logger.error("Integration failed: %s", e.message)
        return EXIT_INTEGRATION
    except EmptyResultError as e:
        logger.error("Empty result: %s", e.message)
        return EXIT_EMPTY
    except AqcCavityError as e:
        logger.error("%s", e.message)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
