import argparse
import logging
import logging.config
import sys
from typing import List, Optional

import yaml
from pydantic import ValidationError

from dissecta.cli.commands import COMMANDS
from dissecta.cli.report import render
from dissecta.core.config import load_config, set_config
from dissecta.core.errors import DissectaError, IdentityFailedError, ParseError

logger = logging.getLogger("dissecta")


class DissectaArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1, exit code 2 belongs to failed identity checks."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _arrangement_parser(subparsers, name: str, description: str) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=description)
    parser.add_argument("arrangement", help="arrangement document")
    return parser


def build_parser() -> argparse.ArgumentParser:
    opt_parser = DissectaArgumentParser(
        prog="dissecta",
        description="Möbius functions, valuations and arrangement dissection",
    )

    opt_parser.add_argument(
        "-c",
        "--config",
        dest="config_file_path",
        help="Configuration file path",
        default="",
    )

    opt_parser.add_argument(
        "--format",
        dest="output_format",
        choices=["text", "json"],
        help="report rendering",
        default="text",
    )

    opt_parser.add_argument(
        "-v",
        "--verbose",
        dest="verbose",
        action="store_true",
        help="log at DEBUG level",
    )

    subparsers = opt_parser.add_subparsers(dest="command", required=True)

    mobius = subparsers.add_parser("mobius", help="Möbius function of a poset")
    mobius.add_argument("poset", help="poset document")
    mobius.add_argument("--from", dest="source", help="lower element", default=None)
    mobius.add_argument("--to", dest="target", help="upper element", default=None)

    check = subparsers.add_parser("check", help="lattice and distributivity flags")
    check.add_argument("poset", help="poset document")

    ji = subparsers.add_parser("ji", help="join-irreducible elements")
    ji.add_argument("poset", help="poset document")

    val = subparsers.add_parser("val", help="valuation module Val(L)")
    val.add_argument("poset", help="poset document")
    val.add_argument(
        "--check-zaslavsky",
        dest="zaslavsky",
        help="subset document M containing ji(L)",
        default=None,
    )

    dissect = _arrangement_parser(subparsers, "dissect", "chamber statistic")
    dissect.add_argument(
        "--chamber-chi",
        dest="chamber_chi",
        type=int,
        help="common Euler characteristic of the chambers",
        default=None,
    )

    for name, description in (
        ("faces", "face counts by dimension"),
        ("fpoly", "f-polynomial"),
        ("identity", "f-polynomial against the Möbius polynomial"),
    ):
        parser = _arrangement_parser(subparsers, name, description)
        parser.add_argument(
            "--profile", dest="profile", help="face profile document", default=None
        )
        if name == "fpoly":
            parser.add_argument(
                "--convention",
                dest="convention",
                choices=["dim", "codim", "literal"],
                default="dim",
            )
        if name == "identity":
            parser.add_argument(
                "--corollary", dest="corollary", choices=["cor68", "cor69"], required=True
            )

    _arrangement_parser(subparsers, "mpoly", "Möbius polynomial")

    verify = subparsers.add_parser("verify", help="check a set model")
    verify.add_argument("setmodel", help="set model document")

    return opt_parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def configure(args: argparse.Namespace) -> None:
    try:
        config = load_config(args.config_file_path or None)
    except OSError as e:
        raise ParseError(f"cannot read {args.config_file_path}: {e.strerror}") from e
    except (yaml.YAMLError, ValidationError) as e:
        raise ParseError(f"invalid configuration: {e}") from e
    set_config(config)
    logging.config.dictConfig(config.logging)
    if args.verbose:
        logger.setLevel(logging.DEBUG)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    try:
        configure(args)
        report = COMMANDS[args.command](args)
    except IdentityFailedError as e:
        if e.details is not None:
            sys.stdout.write(render(e.details, args.output_format))
        sys.stderr.write(f"failed: {e.message}\n")
        return 2
    except DissectaError as e:
        sys.stderr.write(f"error: {e.message}\n")
        return 1

    sys.stdout.write(render(report, args.output_format))
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
