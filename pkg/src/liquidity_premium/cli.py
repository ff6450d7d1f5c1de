"""Command line entry point: `liquidity-premium {bootstrap,price,verify,figures}`.

Exit codes: 0 success, 1 input error, 2 calibration or model-domain error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from pydantic import ValidationError

from liquidity_premium import pipeline
from liquidity_premium.configuration import RunConfig, load_config
from liquidity_premium.data import SAMPLES, sample_config
from liquidity_premium.errors import (
    CalibrationError,
    InputError,
    ModelDomainError,
    VerificationError,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CALIBRATION = 2
EXIT_VERIFICATION = 3


def _seed(raw: str) -> int:
    value = int(raw)
    if not 0 <= value < 2**64:
        msg = f"seed must be an unsigned 64-bit integer, got {raw}"
        raise argparse.ArgumentTypeError(msg)
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser with one sub-command per pipeline step, sharing the run options."""
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path, help="flat TOML run configuration")
    source.add_argument(
        "--sample", choices=sorted(SAMPLES), help="run on a bundled sample configuration"
    )
    common.add_argument("--out", type=Path, help="output directory (overrides the config)")
    common.add_argument("--format", choices=("csv", "json"), help="table format")
    common.add_argument("--seed", type=_seed, help="Monte-Carlo master seed")
    common.add_argument("--paths", type=int, help="Monte-Carlo paths per check")
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    parser = argparse.ArgumentParser(
        prog="liquidity-premium",
        description="Liquidity premia of illiquid corporate bonds under a Hull-White model.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("bootstrap", parents=[common], help="bootstrap OIS and Zeta curves")
    commands.add_parser("price", parents=[common], help="premium bounds, prices and spreads")
    verify = commands.add_parser(
        "verify", parents=[common], help="Monte-Carlo sandwich check of the bounds"
    )
    verify.add_argument(
        "--self-test",
        action="store_true",
        help="swap the lower and upper bounds; every check must then fail",
    )
    commands.add_parser("figures", parents=[common], help="plot data against bond maturity")
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    path = args.config if args.config is not None else sample_config(args.sample)
    return load_config(path).with_overrides(
        out=args.out, format=args.format, seed=args.seed, paths=args.paths
    )


def run(args: argparse.Namespace) -> int:
    """Run the parsed command and return its exit code; errors are raised."""
    config = _resolve_config(args)
    if args.command == "bootstrap":
        pipeline.cmd_bootstrap(config)
    elif args.command == "price":
        pipeline.cmd_price(config)
    elif args.command == "figures":
        pipeline.cmd_figures(config)
    else:
        report = pipeline.cmd_verify(config, self_test=args.self_test)
        failed = [check for check in report.checks if not check.passed]
        if failed:
            ids = ", ".join(f"{check.bond_id} @ {check.ttl_label}" for check in failed)
            msg = f"{len(failed)} sandwich checks failed: {ids}"
            raise VerificationError(msg)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the `liquidity-premium` script."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return run(args)
    except (InputError, ValidationError) as error:
        logger.error(f"Input error: {error}")  # noqa: TRY400; the message is the report.
        return EXIT_INPUT
    except (CalibrationError, ModelDomainError) as error:
        logger.error(f"Calibration error: {error}")  # noqa: TRY400; the message is the report.
        return EXIT_CALIBRATION
    except VerificationError as error:
        logger.error(f"Verification failed: {error}")  # noqa: TRY400; the message is the report.
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
