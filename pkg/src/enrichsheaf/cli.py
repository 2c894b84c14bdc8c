"""Command-line entry point: ``enrichsheaf <command> <instance> [flags]``."""

from __future__ import annotations

import argparse
import os
import sys

from .config import CAP_ENV, EnumerationTooLarge
from .harness import COMMANDS, Options
from .instance import InstanceError, builtin_names, load
from .report import Report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enrichsheaf",
        description="Exhaustive checks for enriched sieves, coverages, sheafification and Gabriel topologies.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="check to run")
    parser.add_argument(
        "instance",
        nargs="?",
        help="instance file path or builtin name (" + ", ".join(builtin_names()) + ")",
    )
    parser.add_argument("--dmax", type=int, default=None, help="degree bound for graded checks")
    parser.add_argument(
        "--cap",
        type=int,
        default=None,
        help=f"enumeration cap (also settable through {CAP_ENV})",
    )
    parser.add_argument("--generators", choices=["full"], default="full", help="generating family for generalized elements")
    parser.add_argument("--format", choices=["text", "machine"], default="text")
    return parser


def run(command: str, instance: str | None, opt: Options) -> Report:
    if instance is None:
        if command != "counterexample":
            raise InstanceError(f"{command} needs an instance file")
        return COMMANDS[command](None, opt)
    inst = load(instance)
    try:
        return COMMANDS[command](inst, opt)
    except EnumerationTooLarge as e:
        rep = Report(command, inst.source)
        rep.not_checked(command, str(e))
        return rep


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.dmax is not None and args.dmax < 1:
        print("error: --dmax must be at least 1", file=sys.stderr)
        return 2
    cap = args.cap
    if cap is None and os.environ.get(CAP_ENV):
        cap = int(os.environ[CAP_ENV])
    opt = Options(dmax=args.dmax, cap=cap, generators=args.generators)
    try:
        rep = run(args.command, args.instance, opt)
    except InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render(args.format))
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
