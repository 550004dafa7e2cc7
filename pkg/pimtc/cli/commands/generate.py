"""Synthetic graph generation and self-test commands for pimtc CLI."""

import argparse

from pimtc.cli.helpers import add_json_out_argument, write_json_report
from pimtc.cli.result import CommandResult, error, success
from pimtc.config import LOGGER
from pimtc.errors import ExitCode
from pimtc.services.graph_io import random_graph, write_edge_list
from pimtc.workflows import analysis_workflow
from pimtc.workflows.analysis import GraphSummary

COMMANDS = ("generate", "selftest")

DEFAULT_SELFTEST_TRIALS = 50


def setup_parser(subparsers: argparse._SubParsersAction) -> None:
    """Set up the generate and selftest command parsers."""
    generate_parser = subparsers.add_parser(
        "generate", help="Write a seeded G(n, p) random graph as a SNAP edge list"
    )
    generate_parser.add_argument(
        "--vertices", "-n", type=int, required=True, help="Number of vertices"
    )
    generate_parser.add_argument(
        "--probability", "-p", type=float, required=True, help="Edge probability"
    )
    generate_parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    generate_parser.add_argument(
        "--output", "-o", required=True, help="Edge-list file to write"
    )

    selftest_parser = subparsers.add_parser(
        "selftest",
        help="Cross-check count engines and the simulator on random graphs",
    )
    selftest_parser.add_argument(
        "--trials",
        type=int,
        default=DEFAULT_SELFTEST_TRIALS,
        help=f"Number of seeded graphs (default: {DEFAULT_SELFTEST_TRIALS})",
    )
    selftest_parser.add_argument("--seed", type=int, default=0, help="Base RNG seed")
    add_json_out_argument(selftest_parser)


def handle_command(args: argparse.Namespace) -> CommandResult:
    """Route generate and selftest commands to their handlers."""
    if args.command == "generate":
        return cmd_generate(args)
    return cmd_selftest(args)


def cmd_generate(args: argparse.Namespace) -> CommandResult:
    graph = random_graph(args.vertices, args.probability, args.seed)
    write_edge_list(graph, args.output)
    return success(
        f"Wrote G({args.vertices}, {args.probability}) with {graph.edge_count} "
        f"edges to {args.output}",
        data=GraphSummary.of(args.output, graph),
    )


def cmd_selftest(args: argparse.Namespace) -> CommandResult:
    """Run the seeded agreement checks and fail on any disagreement."""
    report = analysis_workflow.self_test(args.trials, args.seed)

    for failure in report.failures:
        LOGGER.error(f"  {failure}")

    if args.json_out:
        config = {"command": "selftest", "trials": args.trials, "seed": args.seed}
        write_json_report(args.json_out, config, report.to_dict())

    if not report.passed:
        return error(
            f"Self-test failed: {len(report.failures)} disagreement(s) "
            f"over {report.checks} checks",
            data=report,
            exit_code=ExitCode.FAILURE,
        )
    return success(
        f"Self-test passed: {report.checks} checks over {report.trials} graphs",
        data=report,
    )
