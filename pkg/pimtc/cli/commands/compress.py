"""Compression statistics command for pimtc CLI."""

import argparse

from pimtc.cli.helpers import (
    add_input_argument,
    add_json_out_argument,
    percent,
    write_json_report,
)
from pimtc.cli.result import CommandResult, success
from pimtc.config import DEFAULT_INDEX_WIDTH, DEFAULT_SLICE_LENGTH, LOGGER
from pimtc.workflows import analysis_workflow

COMMANDS = ("compress-stats",)


def setup_parser(subparsers: argparse._SubParsersAction) -> None:
    """Set up the compress-stats command parser."""
    stats_parser = subparsers.add_parser(
        "compress-stats",
        help="Sparsity, compression rate and valid slice pair ratio",
    )
    add_input_argument(stats_parser)
    stats_parser.add_argument(
        "--slice-length",
        type=int,
        nargs="+",
        default=[DEFAULT_SLICE_LENGTH],
        help="One or more |S| values to sweep (e.g. 64 128 256)",
    )
    stats_parser.add_argument(
        "--index-width", type=int, default=DEFAULT_INDEX_WIDTH, help="|D| in bits"
    )
    add_json_out_argument(stats_parser)


def handle_command(args: argparse.Namespace) -> CommandResult:
    return cmd_compress_stats(args)


def cmd_compress_stats(args: argparse.Namespace) -> CommandResult:
    """Report analytic and measured compression metrics per slice length."""
    report = analysis_workflow.compress_stats(
        args.input, args.slice_length, args.index_width
    )

    LOGGER.info(
        f"{args.input}: |V|={report.graph.vertex_count}, "
        f"|E|={report.graph.edge_count}, alpha={percent(report.alpha)}"
    )
    LOGGER.info(
        f"{'|S|':>5} | {'|D|':>4} | {'N_VS':>12} | {'CR (measured)':>14} | "
        f"{'CR (analytic)':>14} | {'VSR':>12}"
    )
    LOGGER.info("-" * 78)
    for m in report.metrics:
        LOGGER.info(
            f"{m.slice_length:>5} | {m.index_width:>4} | {m.valid_slice_count:>12} | "
            f"{percent(m.measured_cr):>14} | {percent(m.analytic_cr):>14} | "
            f"{percent(m.valid_pair_ratio):>12}"
        )

    if args.json_out:
        config = {
            "command": "compress-stats",
            "input": args.input,
            "slice_lengths": args.slice_length,
            "index_width": args.index_width,
        }
        write_json_report(args.json_out, config, report.to_dict())

    return success(data=report)
