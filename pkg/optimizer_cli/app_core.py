"""
Main module of the command-line application.
This module builds the argument parser, merges config-file values with the
flags and dispatches to the subcommand modules.
"""

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from differential_ga import ALGORITHMS, load_config_file
from differential_ga.core import ConfigError, OptimizationError
from optimizer_cli.bench_command import run_bench
from optimizer_cli.catalog_listing import list_functions, print_optima
from optimizer_cli.run_command import run_once

CONFIG_HELP = (
    "plain key=value file; keys are the long flag names without dashes "
    "(alg, function, seed, max-gens, events, summary, compare-published, "
    "history, ...), any other key is a parameter override. Flags given on the "
    "command line win over file values."
)


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser raising ConfigError instead of exiting on bad input."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def _parse_override(text: str) -> tuple:
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    return key.strip(), value.strip()


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="differential-ga",
        description="Real-coded evolutionary optimizers and their benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", parser_class=CliArgumentParser)
    sub.required = True

    run = sub.add_parser("run", help="one seeded run, printed as key=value lines")
    run.add_argument("--alg", help=f"one of {', '.join(ALGORITHMS)}")
    run.add_argument("--function", help="test function id, e.g. F1 or hartman2")
    run.add_argument("--seed", type=int)
    run.add_argument("--max-gens", dest="max_gens", type=int)
    run.add_argument("--trace", help="write the per-generation trace csv here")
    run.add_argument("--events", help="write the CERAF event log here")

    bench = sub.add_parser("bench", help="benchmark campaign and report")
    bench.add_argument("--alg", help="algorithm id or comma-separated list")
    bench.add_argument("--functions", help="comma-separated function ids or 'all'")
    bench.add_argument("--runs", type=int)
    bench.add_argument("--seed", type=int, help="base seed; run i uses seed + i")
    bench.add_argument("--max-gens", dest="max_gens", type=int)
    bench.add_argument("--jobs", type=int, help="worker processes (default: all CPUs)")
    bench.add_argument("--format", choices=["csv", "text"])
    bench.add_argument("--out", help="report path (csv when it ends with .csv)")
    bench.add_argument("--summary", choices=["reliability", "convergence"])
    bench.add_argument("--compare-published", dest="compare_published", action="store_true", default=None)
    bench.add_argument("--history", help="append a campaign line to this history file")

    for subparser in (run, bench):
        subparser.add_argument("--config", help=CONFIG_HELP)
        subparser.add_argument(
            "--param",
            action="append",
            type=_parse_override,
            default=[],
            metavar="KEY=VALUE",
            help="algorithm parameter override, repeatable (e.g. --param cr=0.3)",
        )
        subparser.add_argument("--verbose", action="store_true")

    sub.add_parser("list", help="print the test function catalog")
    sub.add_parser("optima", help="print the reference optima and their provenance")
    return parser


class OptimizerCLI:
    def __init__(self, argv: Optional[Sequence[str]] = None) -> None:
        """
        Initializes the application with the raw arguments; nothing is parsed
        before ``run``.
        """
        self.argv: List[str] = list(sys.argv[1:] if argv is None else argv)
        self.parser = build_parser()
        self.args: Any = None
        self.file_settings: Dict[str, str] = {}
        self.overrides: Dict[str, str] = {}

    def setting(self, name: str, default: Any = None, convert: Callable[[str], Any] = str) -> Any:
        """
        Value of a setting: the flag if given, else the config file, else
        ``default``. ``name`` is the long flag name, e.g. ``"max-gens"``.
        """
        value = getattr(self.args, name.replace("-", "_"), None)
        if value is not None:
            return value
        if name in self.file_settings:
            try:
                return convert(self.file_settings[name])
            except ValueError as err:
                raise ConfigError(f"Invalid value for '{name}' in config file: {err}") from err
        return default

    def _load_configuration(self) -> None:
        config_path = getattr(self.args, "config", None)
        if config_path:
            self.file_settings, self.overrides = load_config_file(config_path)
        for key, value in getattr(self.args, "param", []):
            self.overrides[key] = value

    def run(self) -> int:
        """
        Parses the arguments and executes the subcommand.

        Returns the exit status: 0 on success, 1 on a configuration error
        (usage is printed), 2 on any other failure.
        """
        try:
            self.args = self.parser.parse_args(self.argv)
            self._load_configuration()
            if self.args.command == "run":
                run_once(self)
            elif self.args.command == "bench":
                run_bench(self)
            elif self.args.command == "list":
                list_functions(self)
            else:
                print_optima(self)
        except ConfigError as err:
            self.parser.print_usage(sys.stderr)
            print(f"differential-ga: error: {err}", file=sys.stderr)
            return 1
        except (OptimizationError, OSError) as err:
            print(f"differential-ga: {err}", file=sys.stderr)
            return 2
        except SystemExit as exit_request:
            # --help
            return int(exit_request.code or 0)
        return 0

