"""Command line entry point: klgalois <subcommand> [flags]."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import TYPE_CHECKING, Any

import colorlog

from .campaign import CampaignConfig, VerificationCampaign
from .const import (
    _LOGGER,
    COMMANDS,
    CONF_COMMAND,
    CONF_FALLBACK,
    CONF_FORMAT,
    CONF_GAMMAS,
    CONF_HEIGHT_BOUND,
    CONF_LENGTH_BOUND,
    CONF_LEVELS,
    CONF_OUTPUT,
    CONF_Q_VALUES,
    CONF_QEXP,
    CONF_RHO_DIM,
    CONF_ROOT_DATUM,
    CONF_SIZES,
    CONF_STEINBERG,
    CONF_TOLERANCE,
    CONF_TORSION,
    CONF_WORKERS,
    DOCS,
    EXIT_ENGINE_DEFECT,
    EXIT_USAGE,
    FORMAT_CSV,
    FORMAT_JSON,
    NAME,
    STARTUP_MESSAGE,
    VERSION,
)
from .exceptions import EngineDefect, KLGaloisError

if TYPE_CHECKING:
    from collections.abc import Sequence

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"


def setup_logging(verbosity: int) -> None:
    """Colored stderr logging for the package logger. Library code never calls this."""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    level = logging.INFO
    if verbosity > 0:
        level = logging.DEBUG
    elif verbosity < 0:
        level = logging.WARNING
    _LOGGER.handlers[:] = [handler]
    _LOGGER.setLevel(level)
    _LOGGER.propagate = False


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="YAML or JSON campaign file; flags override its values")
    parent.add_argument("--type", dest=CONF_ROOT_DATUM, help=DOCS[CONF_ROOT_DATUM])
    parent.add_argument("--steinberg", dest=CONF_STEINBERG, action="store_true", default=None, help=DOCS[CONF_STEINBERG])
    parent.add_argument("--torsion", dest=CONF_TORSION, nargs="+", help=DOCS[CONF_TORSION])
    parent.add_argument("--qexp", dest=CONF_QEXP, nargs="+", help=DOCS[CONF_QEXP])
    parent.add_argument("--q", dest=CONF_Q_VALUES, nargs="+", help=DOCS[CONF_Q_VALUES])
    parent.add_argument("--bound", dest=CONF_HEIGHT_BOUND, type=int, nargs="+", help=DOCS[CONF_HEIGHT_BOUND])
    parent.add_argument("--rho-dim", dest=CONF_RHO_DIM, type=int, help=DOCS[CONF_RHO_DIM])
    parent.add_argument("--n", dest=CONF_SIZES, type=int, nargs="+", help=DOCS[CONF_SIZES])
    parent.add_argument("--level", dest=CONF_LEVELS, type=int, nargs="+", help=DOCS[CONF_LEVELS])
    parent.add_argument("--gamma", dest=CONF_GAMMAS, type=int, nargs="+", help=DOCS[CONF_GAMMAS])
    parent.add_argument("--length-bound", dest=CONF_LENGTH_BOUND, type=int, help=DOCS[CONF_LENGTH_BOUND])
    parent.add_argument("--tolerance", dest=CONF_TOLERANCE, type=float, help=DOCS[CONF_TOLERANCE])
    parent.add_argument(
        "--no-fallback", dest=CONF_FALLBACK, action="store_false", default=None, help="Refuse non-regular torus points"
    )
    parent.add_argument("--output", dest=CONF_OUTPUT, help=DOCS[CONF_OUTPUT])
    parent.add_argument("--format", dest=CONF_FORMAT, choices=(FORMAT_JSON, FORMAT_CSV), help=DOCS[CONF_FORMAT])
    parent.add_argument("--workers", dest=CONF_WORKERS, type=int, help=DOCS[CONF_WORKERS])
    noise = parent.add_mutually_exclusive_group()
    noise.add_argument("-v", "--verbose", action="store_const", const=1, dest="verbosity", default=0)
    noise.add_argument("-q", "--quiet", action="store_const", const=-1, dest="verbosity")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klgalois", description=NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest=CONF_COMMAND, required=True, metavar="command")
    parent = _common_flags()
    helps = {
        "enumerate": "Enumerate GL_n parameters with both discreteness criteria",
        "degree": "Truncated formal degrees with exact values and a float cross-check",
        "galois-check": "Galois twists of GL_n parameters or of one torus point, with formal degrees",
        "hecke-verify": "Check the Bernstein relations on generators",
        "export": "Dump every exact value for a configuration",
    }
    for command in COMMANDS:
        sub.add_parser(command, parents=[parent], help=helps[command])
    return parser


def config_from_args(args: argparse.Namespace) -> CampaignConfig:
    overrides: dict[str, Any] = {
        key: value
        for key, value in vars(args).items()
        if key not in ("config", "verbosity") and value is not None
    }
    if args.config:
        return CampaignConfig.load(args.config, overrides)
    return CampaignConfig.from_dict(overrides)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    setup_logging(args.verbosity)
    _LOGGER.info(STARTUP_MESSAGE)
    try:
        config = config_from_args(args)
        result = VerificationCampaign(config).run()
        text = result.write()
    except EngineDefect as err:
        _LOGGER.error("Engine self-check failed, this is a bug and not a verdict: %s", err)
        return EXIT_ENGINE_DEFECT
    except KLGaloisError as err:
        _LOGGER.error("%s", err)
        return EXIT_USAGE
    if not config.output:
        sys.stdout.write(text)
    return result.exit_code


def run() -> None:
    sys.exit(main())
