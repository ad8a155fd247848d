"""Command-line interface.

Each subcommand builds the input of one tool, runs it through the executor
and prints the result as JSON. Files are written with ``--out``.
"""

import argparse
import asyncio
import json
import sys
from collections.abc import Sequence
from typing import Any

from pydantic import ValidationError

from pilot_clustering._core.config import get_settings
from pilot_clustering._core.executor import execute_tool
from pilot_clustering._core.log import LOG_LEVELS, configure_logging
from pilot_clustering._core.registry import get_registry

EPILOG = """
Examples:
  # Full sweep from a config file, two worker processes
  %(prog)s sweep --config experiment.cfg --out records.csv --workers 2

  # One deployment, its propagation table and a formation run
  %(prog)s deploy --cells 7 --seed 3 --out net.txt
  %(prog)s mu net.txt --seed 3 --out table.txt
  %(prog)s form table.txt --scheme zfc --antennas 200 --out trace.txt

  # Tool discovery
  %(prog)s --list-tools
  %(prog)s --schema game_form
"""


def format_output(data: dict[str, Any]) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _labels(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        msg = f"expected comma-separated integers, got '{text}'"
        raise argparse.ArgumentTypeError(msg) from None


def _add_radio_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("table", help="Propagation table record")
    parser.add_argument("--scheme", choices=["mrc", "zfc"], default="mrc")
    parser.add_argument("--antennas", type=int, default=100, help="M")
    parser.add_argument("--pilots-per-cell", type=int, default=10, help="B/L")
    parser.add_argument("--symbols", type=int, default=400, help="S")
    parser.add_argument("--snr-db", type=float, default=5.0)


def _radio_input(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "table_path": args.table,
        "scheme": args.scheme,
        "antennas": args.antennas,
        "pilots_per_cell": args.pilots_per_cell,
        "symbols": args.symbols,
        "snr_db": args.snr_db,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pilot-clustering",
        description="Pilot clustering simulator for cellular massive MIMO",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--list-tools", action="store_true", help="List all tools")
    parser.add_argument("--schema", metavar="TOOL", help="Show a tool's schemas")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        help="Log level (default from settings)",
    )
    commands = parser.add_subparsers(dest="command")

    sweep = commands.add_parser("sweep", help="Run a full experiment sweep")
    sweep.add_argument("--config", help="key=value experiment file")
    sweep.add_argument("--seed", type=int, help="Master seed")
    sweep.add_argument("--out", help="Records CSV path")
    sweep.add_argument("--summary-out", help="Summary CSV path")
    sweep.add_argument("--workers", type=int)
    sweep.add_argument("--methods", help="Comma-separated methods")
    sweep.add_argument("--scheme", choices=["mrc", "zfc"], help="Single scheme")
    sweep.add_argument("--trials", type=int)

    deploy = commands.add_parser("deploy", help="Emit a random deployment")
    deploy.add_argument("--cells", type=int, default=7)
    deploy.add_argument("--density", type=float, default=25.0)
    deploy.add_argument("--alpha", type=float, default=3.0)
    deploy.add_argument("--seed", type=int, default=0)
    deploy.add_argument("--out")

    mu = commands.add_parser("mu", help="Estimate a deployment's propagation table")
    mu.add_argument("deployment", help="Deployment record")
    mu.add_argument("--samples", type=int, default=10_000, help="UEs per cell")
    mu.add_argument("--seed", type=int, default=0)
    mu.add_argument("--workers", type=int, default=1)
    mu.add_argument("--out")

    form = commands.add_parser("form", help="Run coalition formation once")
    _add_radio_arguments(form)
    form.add_argument("--budget", type=int, default=100, help="q per BS")
    form.add_argument("--seed", type=int, default=0)
    form.add_argument("--initial", type=_labels, help="Initial labels, e.g. 0,0,1")
    form.add_argument("--out", help="Trace path")

    exhaustive = commands.add_parser("exhaustive", help="Exhaustive optimum")
    _add_radio_arguments(exhaustive)
    exhaustive.add_argument(
        "--objective", choices=["total-se", "per-cell-mean"], default="total-se"
    )
    exhaustive.add_argument("--out", help="Structure path")

    stable = commands.add_parser("stable-check", help="Certify a structure")
    _add_radio_arguments(stable)
    stable.add_argument("structure", help="Coalition structure record")
    stable.add_argument("--budget", type=int, default=100)
    stable.add_argument("--eta", type=_labels, help="Search counters, e.g. 0,2,1")

    return parser


def tool_request(args: argparse.Namespace) -> tuple[str, dict[str, Any]]:
    """Map parsed arguments to (tool name, input data)."""
    if args.command == "sweep":
        overrides = {
            "master_seed": args.seed,
            "methods": args.methods,
            "schemes": args.scheme,
            "trials": args.trials,
        }
        return "harness_sweep", {
            "config_path": args.config,
            "overrides": {k: v for k, v in overrides.items() if v is not None},
            "out": args.out,
            "summary_out": args.summary_out,
            "workers": args.workers,
        }
    if args.command == "deploy":
        return "geometry_deploy", {
            "cells": args.cells,
            "density": args.density,
            "alpha": args.alpha,
            "seed": args.seed,
            "out": args.out,
        }
    if args.command == "mu":
        return "propagation_estimate", {
            "deployment_path": args.deployment,
            "samples_per_cell": args.samples,
            "seed": args.seed,
            "workers": args.workers,
            "out": args.out,
        }
    if args.command == "form":
        return "game_form", {
            **_radio_input(args),
            "budget": args.budget,
            "seed": args.seed,
            "initial_labels": args.initial,
            "out": args.out,
        }
    if args.command == "exhaustive":
        return "game_exhaustive", {
            **_radio_input(args),
            "objective": args.objective,
            "out": args.out,
        }
    return "game_stable_check", {
        **_radio_input(args),
        "structure_path": args.structure,
        "budget": args.budget,
        "eta": args.eta,
    }


async def run(args: argparse.Namespace) -> dict[str, Any]:
    registry = get_registry()
    if args.list_tools:
        tools = registry.discover_tools()
        return {"success": True, "tools": tools, "count": len(tools)}
    if args.schema:
        try:
            metadata = registry.get_tool_metadata(args.schema)
        except ValueError as e:
            return {"success": False, "error": f"Failed to get schema: {e}"}
        return {"success": True, "tool": args.schema, **metadata.model_dump()}

    tool_name, input_data = tool_request(args)
    result = await execute_tool(tool_name, input_data)
    return result.model_dump()


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``pilot-clustering`` script; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not (args.command or args.list_tools or args.schema):
        parser.print_help()
        return 1

    try:
        level = args.log_level or get_settings().log_level
    except ValidationError as e:
        print(format_output({"success": False, "error": f"Invalid settings: {e}"}))
        return 1
    configure_logging(level)
    try:
        result = asyncio.run(run(args))
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 130
    print(format_output(result))
    return 0 if result["success"] else 1


__all__ = ["build_parser", "tool_request", "main"]
