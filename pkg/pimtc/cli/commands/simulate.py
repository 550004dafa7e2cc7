"""Memory-array simulation commands for pimtc CLI."""

import argparse

from pimtc.cli.helpers import (
    add_array_arguments,
    add_input_argument,
    add_json_out_argument,
    format_capacity,
    load_cost,
    percent,
    resolve_capacities,
    write_json_report,
)
from pimtc.cli.result import CommandResult, success, warning
from pimtc.config import LOGGER, REPLACEMENT_REDUCTION_BAND
from pimtc.models.simulation import CostConfig, ReplacementPolicy, RowOrder
from pimtc.models.slicing import SliceConfig
from pimtc.workflows import analysis_workflow

COMMANDS = ("simulate", "compare-policies")


def setup_parser(subparsers: argparse._SubParsersAction) -> None:
    """Set up the simulate and compare-policies command parsers."""
    simulate_parser = subparsers.add_parser(
        "simulate", help="Simulate the slice data flow over a bounded memory array"
    )
    add_input_argument(simulate_parser)
    add_array_arguments(simulate_parser, multiple_capacities=False)
    simulate_parser.add_argument(
        "--policy",
        choices=[policy.value for policy in ReplacementPolicy],
        default=ReplacementPolicy.PRIORITY.value,
        help="Column slice replacement policy",
    )
    add_json_out_argument(simulate_parser)

    compare_parser = subparsers.add_parser(
        "compare-policies",
        help="Run LRU and priority replacement side by side per capacity",
    )
    add_input_argument(compare_parser)
    add_array_arguments(compare_parser, multiple_capacities=True)
    add_json_out_argument(compare_parser)


def handle_command(args: argparse.Namespace) -> CommandResult:
    """Route simulation commands to their appropriate handlers."""
    handlers = {
        "simulate": cmd_simulate,
        "compare-policies": cmd_compare_policies,
    }
    return handlers[args.command](args)


def _config_echo(
    args: argparse.Namespace,
    cfg: SliceConfig,
    capacities: list[int | None],
    cost: CostConfig,
) -> dict:
    return {
        "command": args.command,
        "input": args.input,
        "slice_config": cfg.to_dict(),
        "capacity_slices": capacities,
        "order": args.order,
        "cost": cost.to_dict(),
    }


def cmd_simulate(args: argparse.Namespace) -> CommandResult:
    """Simulate one policy / capacity / order combination."""
    cfg = SliceConfig(slice_length=args.slice_length, index_width=args.index_width)
    capacity = resolve_capacities(args, cfg)[0]
    cost = load_cost(args)
    policy = ReplacementPolicy(args.policy)

    run = analysis_workflow.simulate(
        args.input, cfg, policy, capacity, cost, RowOrder(args.order)
    )
    report = run.report
    counters = report.counters

    LOGGER.info(
        f"{args.input}: policy={policy.value}, order={args.order}, "
        f"capacity={format_capacity(capacity)} slices"
    )
    LOGGER.info(f"  triangles            {counters.triangles}")
    LOGGER.info(f"  column loads         {counters.column_loads_requested}")
    LOGGER.info(f"  hits / misses        {counters.hits} / {counters.misses}")
    LOGGER.info(f"  replacements         {counters.replacements}")
    LOGGER.info(
        f"  row / column writes  {counters.row_writes} / {counters.column_writes}"
    )
    LOGGER.info(f"  hit ratio            {percent(report.hit_ratio)}")
    LOGGER.info(f"  compression rate     {percent(report.compression_rate)}")
    LOGGER.info(f"  valid pair ratio     {percent(report.valid_pair_ratio)}")
    estimate = "placeholder estimate" if cost.placeholder else "estimate"
    LOGGER.info(
        f"  cost ({estimate})   {report.total_latency:.3f} ns, "
        f"{report.total_energy:.3f} pJ"
    )

    if args.json_out:
        config = {**_config_echo(args, cfg, [capacity], cost), "policy": args.policy}
        write_json_report(args.json_out, config, run.to_dict())

    return success(data=run)


def cmd_compare_policies(args: argparse.Namespace) -> CommandResult:
    """LRU against priority replacement for each requested capacity."""
    cfg = SliceConfig(slice_length=args.slice_length, index_width=args.index_width)
    capacities = resolve_capacities(args, cfg)
    cost = load_cost(args)

    comparison = analysis_workflow.compare_policies(
        args.input, capacities, cfg, cost, RowOrder(args.order)
    )

    LOGGER.info(
        f"{'Capacity':>10} | {'LRU hit/miss/repl':>26} | "
        f"{'Priority hit/miss/repl':>26} | {'Reduction':>10}"
    )
    LOGGER.info("-" * 82)
    for row in comparison.rows:
        lru, pri = row.lru, row.priority
        LOGGER.info(
            f"{format_capacity(row.capacity_slices):>10} | "
            f"{f'{lru.hits}/{lru.misses}/{lru.replacements}':>26} | "
            f"{f'{pri.hits}/{pri.misses}/{pri.replacements}':>26} | "
            f"{percent(row.replacement_reduction):>10}"
        )

    if args.json_out:
        config = _config_echo(args, cfg, capacities, cost)
        write_json_report(args.json_out, config, comparison.to_dict())

    if not all(row.priority_dominates for row in comparison.rows):
        return warning("Priority replacement missed more often than LRU", comparison)
    if comparison.reduction_outside_band:
        low, high = REPLACEMENT_REDUCTION_BAND
        return warning(
            f"Largest replacement reduction "
            f"{percent(comparison.max_replacement_reduction)} lies outside the "
            f"usual {percent(low)} to {percent(high)} range",
            comparison,
        )
    return success(data=comparison)
