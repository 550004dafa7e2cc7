"""Triangle count command for pimtc CLI."""

import argparse

from pimtc.cli.helpers import (
    add_input_argument,
    add_json_out_argument,
    write_json_report,
)
from pimtc.cli.result import CommandResult, success
from pimtc.config import LOGGER
from pimtc.workflows import analysis_workflow
from pimtc.workflows.analysis import ENGINES

COMMANDS = ("count",)


def setup_parser(subparsers: argparse._SubParsersAction) -> None:
    """Set up the count command parser."""
    count_parser = subparsers.add_parser(
        "count", help="Count the triangles of an edge-list graph"
    )
    add_input_argument(count_parser)
    count_parser.add_argument(
        "--engine",
        choices=sorted(ENGINES),
        default="bitwise",
        help="bitwise AND+BitCount kernel, set-intersection oracle, or trace(A^3)/6",
    )
    add_json_out_argument(count_parser)


def handle_command(args: argparse.Namespace) -> CommandResult:
    return cmd_count(args)


def cmd_count(args: argparse.Namespace) -> CommandResult:
    """Count triangles with the chosen engine and report timing."""
    report = analysis_workflow.count(args.input, args.engine)

    LOGGER.info(f"{'Graph':<30} | {'|V|':>10} | {'|E|':>12} | {'Triangles':>14}")
    LOGGER.info("-" * 76)
    LOGGER.info(
        f"{args.input:<30} | {report.graph.vertex_count:>10} | "
        f"{report.graph.edge_count:>12} | {report.triangles:>14}"
    )
    LOGGER.info(f"Engine: {report.engine}, wall time {report.seconds:.3f}s")

    if args.json_out:
        config = {"command": "count", "input": args.input, "engine": args.engine}
        write_json_report(args.json_out, config, report.to_dict())

    return success(data=report)
