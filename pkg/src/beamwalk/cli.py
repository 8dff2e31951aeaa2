"""Command-line front end.

Exit codes: 0 success, 1 config error, 2 violated numerical invariant,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .errors import ConfigError, NumericalInvariantError
from .runner import replay, run

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # Argument mistakes are config errors (exit 1), not argparse's exit 2.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="beamwalk",
        description="Simulate discrete-time quantum walks on a beam-splitter mesh "
        "and emit distribution/variance/similarity tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="execute a run described by a JSON config")
    run_parser.add_argument("config", type=Path, help="path of the config document")
    run_parser.add_argument(
        "--output-dir", type=Path, default=None,
        help="write outputs here instead of the config's output_dir",
    )

    replay_parser = sub.add_parser(
        "replay", help="re-run a manifest using its serialized phase schedules"
    )
    replay_parser.add_argument("manifest", type=Path, help="path of a run manifest")
    replay_parser.add_argument(
        "--output-dir", type=Path, default=None,
        help="write outputs here instead of the manifest's output_dir",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            config = load_config(args.config)
            manifest = run(config, base_dir=args.config.parent,
                           output_dir=args.output_dir)
        else:
            manifest = replay(args.manifest, output_dir=args.output_dir)
    except ConfigError as exc:
        print(f"beamwalk: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalInvariantError as exc:
        print(f"beamwalk: numerical invariant violated: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"beamwalk: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(manifest)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
