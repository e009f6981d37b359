"""Command-line surface of the toolkit."""

import argparse
from typing import NoReturn

from app import __version__
from app.common.exception import ConfigError
from config.settings import settings

COMMANDS = ("solve-exact", "train", "evaluate", "bound", "collect")

COMMAND_HELP = {
    "solve-exact": "Shapley value iteration; writes q*, v*, alpha*, beta*",
    "train": "Minimax LSPI training; writes report, theta trace, policy",
    "evaluate": "Monte Carlo rollout evaluation of a stored policy",
    "bound": "error bound over a stored dataset against the exact oracle",
    "collect": "sample a dataset (trajectory or exhaustive design)",
}


class CLIArgumentParser(argparse.ArgumentParser):
    """사용법 오류를 종료 코드 1의 ConfigError로 바꾸는 파서."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(message=f"{self.prog}: {message}")


def build_parser() -> CLIArgumentParser:
    parser = CLIArgumentParser(
        prog="minimax-lspi",
        description="Minimax LSPI for the attacker-defender routing game",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=CLIArgumentParser
    )
    for command in COMMANDS:
        sub = subparsers.add_parser(command, help=COMMAND_HELP[command])
        sub.add_argument(
            "--config",
            required=True,
            metavar="PATH",
            help="JSON experiment document",
        )
        sub.add_argument(
            "--out",
            default=settings.default_output_dir,
            metavar="DIR",
            help="output directory (default: %(default)s)",
        )
        sub.add_argument(
            "--seed",
            type=int,
            default=None,
            metavar="N",
            help="overrides the document's seed",
        )
        sub.add_argument(
            "--quiet", action="store_true", help="only warnings and errors"
        )
    return parser
