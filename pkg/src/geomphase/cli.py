"""Command-line entry point.

    geomphase run --config cfg.json [--report out.json] [--samples out.csv] [--seed N]
    geomphase validate --config cfg.json
    geomphase serve [--host HOST] [--port PORT]
    geomphase --version

Exit codes: 0 success, 1 computational failure (categorized), 2 invalid
configuration / usage.  Output files are byte-deterministic for a given
config and seed.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import load_config
from .errors import ConfigError, GeomphaseError
from .runner import execute, render_report, render_samples

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomphase",
        description="geometric and Pancharatnam phases of finite-dimensional "
                    "quantum states")
    parser.add_argument("--version", action="version",
                        version=f"geomphase {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a task described by a JSON config")
    run.add_argument("--config", required=True, help="path to the JSON config")
    run.add_argument("--report", default=None,
                     help="report output path (default: config output.report_path "
                          "or report.json)")
    run.add_argument("--samples", default=None,
                     help="samples CSV path (default: config output.samples_path "
                          "or samples.csv)")
    run.add_argument("--seed", type=int, default=None,
                     help="override the config seed")

    val = sub.add_parser("validate", help="check a config without running it")
    val.add_argument("--config", required=True, help="path to the JSON config")

    srv = sub.add_parser("serve", help="start the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    return parser


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _cmd_run(args) -> int:
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = execute(config, seed=args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeomphaseError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    report_path = args.report or config.output.report_path or "report.json"
    samples_path = args.samples or config.output.samples_path or "samples.csv"
    try:
        _write(report_path, render_report(result.report))
        _write(samples_path, render_samples(result.samples_header, result.samples))
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"wrote {report_path} and {samples_path}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    try:
        load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print("configuration valid")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "validate":
        return _cmd_validate(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
