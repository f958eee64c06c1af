#!/usr/bin/env python3
"""
Command-line entry point
Reproduces the dispersion, density and entropy data of nonlinear coherent / squeezed states

Exit codes: 0 success, 1 configuration error, 2 failing verify run
"""

import argparse
import logging
import sys
from typing import List, Optional

from commands import DensityCommand, DispersionCommand, EntropySweepCommand, StateDumpCommand, VerifyCommand
from config import LOG_FILE, LOG_FORMAT, LOG_LEVEL
from models import PRESETS, Command, ConfigError, OutputFormat, RunConfig, apply_preset, parse_model
from observables import QuadratureConvention
from output_writer import write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY_FAILED = 2

HANDLERS = {
    Command.DISPERSION: DispersionCommand,
    Command.DENSITY: DensityCommand,
    Command.ENTROPY_SWEEP: EntropySweepCommand,
    Command.STATE_DUMP: StateDumpCommand,
    Command.VERIFY: VerifyCommand,
}


class CliParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; report them as configuration errors instead"""

    def error(self, message):
        raise ConfigError(message)


def parse_gamma(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as e:
        raise ConfigError(f"gamma '{text}' is not a real or complex number") from e


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="fock-states", description=__doc__,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", nargs="?", choices=[c.value for c in Command],
                        help="Table to produce (implied by --preset)")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="Figure-reproduction defaults")
    parser.add_argument("--model", action="append", dest="models", metavar="MODEL",
                        help="harmonic, quadratic or lq:A,B (repeatable)")
    parser.add_argument("--z-min", type=float)
    parser.add_argument("--z-max", type=float)
    parser.add_argument("--z-steps", type=int, help="Number of z points (1 = z-min only)")
    parser.add_argument("--x-min", type=float)
    parser.add_argument("--x-max", type=float)
    parser.add_argument("--x-steps", type=int)
    parser.add_argument("--gamma", type=str, help="Squeezing parameter, e.g. 0.5 or 0.3+0.2j")
    parser.add_argument("--levels", type=int, help="Truncation level N")
    parser.add_argument("--theta", type=float, help="Beam-splitter angle in [0, pi]")
    parser.add_argument("--phi", type=float, help="Beam-splitter phase")
    parser.add_argument("--convention", choices=[c.value for c in QuadratureConvention])
    parser.add_argument("--method", choices=["matrix", "series"], help="Entropy path for entropy-sweep")
    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--output", dest="output_path", help="Output file (stdout when omitted)")
    parser.add_argument("--workers", type=int, help="Worker processes for entropy sweeps")
    parser.add_argument("--inject-fault", action="store_true", default=None,
                        help="Perturb the recurrence seeds in verify (negative control)")
    parser.add_argument("--log-file", default=LOG_FILE, help="Log file, or 'none' to log to stderr only")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    return parser


def setup_logging(verbose: bool = False, log_file: Optional[str] = LOG_FILE):
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file and log_file.lower() != "none":
        handlers.insert(0, logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Build and validate a RunConfig from parsed flags

    Args:
        args: Parsed command line

    Returns:
        Validated RunConfig
    """
    overrides = {
        "command": Command(args.command) if args.command else None,
        "models": [parse_model(token) for token in args.models] if args.models else None,
        "z_min": args.z_min,
        "z_max": args.z_max,
        "z_steps": args.z_steps,
        "x_min": args.x_min,
        "x_max": args.x_max,
        "x_steps": args.x_steps,
        "gamma": parse_gamma(args.gamma) if args.gamma is not None else None,
        "levels": args.levels,
        "theta": args.theta,
        "phi": args.phi,
        "convention": QuadratureConvention(args.convention) if args.convention else None,
        "method": args.method,
        "output_format": OutputFormat(args.output_format) if args.output_format else None,
        "output_path": args.output_path,
        "workers": args.workers,
        "inject_fault": args.inject_fault,
    }

    if args.preset:
        values = apply_preset(args.preset, overrides)
    else:
        if overrides["command"] is None:
            raise ConfigError("a command or --preset is required")
        values = {key: value for key, value in overrides.items() if value is not None}
        if "models" in values:
            values["models"] = tuple(values["models"])

    return RunConfig(**values).validate()


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse flags, run one command and write its table

    Returns:
        Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    setup_logging(args.verbose, args.log_file)
    try:
        cfg = config_from_args(args)
    except ValueError as e:
        logger.error(f"❌ Invalid configuration: {e}")
        return EXIT_CONFIG

    logger.info("=" * 70)
    logger.info(f"🚀 {cfg.command.value} (preset={cfg.preset or 'none'})")
    logger.info(f"Models: {', '.join(model.label for model in cfg.models)}")
    logger.info(f"N={cfg.levels} gamma={cfg.gamma} theta={cfg.theta:g} phi={cfg.phi:g}")
    logger.info("=" * 70)

    handler = HANDLERS[cfg.command](cfg)
    try:
        rows = handler.build_rows()
    except ValueError as e:
        logger.error(f"❌ {cfg.command.value} failed: {e}")
        return EXIT_CONFIG

    write_table(cfg.header_items(), handler.COLUMNS, rows, cfg.output_format.value,
                cfg.output_path, handler.metadata())
    logger.info(f"📊 Stats: {handler.get_stats()}")

    if cfg.command is Command.VERIFY and not handler.passed:
        logger.error("❌ Verification failed")
        return EXIT_VERIFY_FAILED
    logger.info("✅ Done")
    return EXIT_OK


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
