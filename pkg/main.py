import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from src.conf import messages
from src.conf.config import CliConfig, settings
from src.routes import agent, check, erotetic, parse, prove
from src.routes.common import EXIT_USAGE, CommandError

logger = logging.getLogger(__name__)

ROUTES = (parse, prove, check, erotetic, agent)

# flag name -> CliConfig field
OVERRIDES = {
    "defeaters": "defeaters_file",
    "format": "output_format",
    "max_nodes": "max_nodes",
    "max_depth": "max_depth",
    "strict_axioms": "strict_axioms",
    "color": "color",
}


def common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="dotenv-style settings file")
    common.add_argument("--defeaters", metavar="FILE", help="defeater assignment file")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--max-nodes", type=int, metavar="N")
    common.add_argument("--max-depth", type=int, metavar="N")
    common.add_argument("--strict-axioms", action="store_true", default=None,
                        help="axioms must carry exactly their assigned defeater sets")
    common.add_argument("--color", action="store_true", default=None)
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erotetic", description="Defeasible erotetic sequent calculi")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_options()]
    for route in ROUTES:
        route.register(subparsers, parents)
    return parser


def load_config(args: argparse.Namespace) -> CliConfig:
    """
    The load_config function builds the settings for one command: environment
    and the dotenv file (--config, else .env) first, explicit flags on top.

    :param args: argparse.Namespace: Parsed command-line arguments
    :return: A validated CliConfig
    :doc-author: Trelent
    """
    overrides = {field: getattr(args, flag) for flag, field in OVERRIDES.items()
                 if getattr(args, flag, None) is not None}
    if args.config:
        return CliConfig(_env_file=args.config, **overrides)
    return CliConfig(**overrides)


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else EXIT_USAGE
    if args.config and not Path(args.config).is_file():
        print(f"{messages.CONFIG_FILE_NOT_FOUND}: {args.config}", file=sys.stderr)
        return EXIT_USAGE
    try:
        config = load_config(args)
    except ValidationError as err:
        print(f"Invalid configuration: {err}", file=sys.stderr)
        return EXIT_USAGE
    settings.truth_table_max_atoms = config.truth_table_max_atoms
    logging.basicConfig(level=logging.DEBUG if args.verbose else config.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args, config)
    except CommandError as err:
        logger.debug("%s failed with exit code %d", args.command, err.exit_code)
        print(err.detail, file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
