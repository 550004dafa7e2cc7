"""Helper functions for CLI commands to reduce duplication."""

import argparse
import json
from pathlib import Path

from pimtc.config import (
    CAPACITY_PRESETS_MB,
    DEFAULT_INDEX_WIDTH,
    DEFAULT_SLICE_LENGTH,
    LOGGER,
    TOOL_VERSION,
)
from pimtc.models.simulation import CostConfig
from pimtc.models.slicing import SliceConfig
from pimtc.services.cost_model import load_cost_config
from pimtc.services.pim_sim import capacity_from_megabytes
from pimtc.utils import config_hash

UNBOUNDED = ("inf", "unbounded")


def parse_capacity(value: str) -> int | None:
    """argparse type for slice capacities; 'inf' means unbounded."""
    if value.lower() in UNBOUNDED:
        return None
    try:
        capacity = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"capacity must be an integer or 'inf', got {value!r}"
        ) from e
    return capacity


def add_input_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input", "-i", required=True, help="SNAP edge-list file to analyze"
    )


def add_json_out_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json-out", help="Write a JSON report to this path")


def add_array_arguments(
    parser: argparse.ArgumentParser, multiple_capacities: bool
) -> None:
    """Slice geometry, capacity, order and cost-model flags for simulation runs."""
    # Single runs take a one-element list: [None] is "inf", None is unset
    nargs: str | int = "+" if multiple_capacities else 1
    parser.add_argument(
        "--slice-length", type=int, default=DEFAULT_SLICE_LENGTH, help="|S| in bits"
    )
    parser.add_argument(
        "--index-width", type=int, default=DEFAULT_INDEX_WIDTH, help="|D| in bits"
    )
    parser.add_argument(
        "--capacity-mb",
        type=float,
        nargs=nargs,
        help=f"Array size in MB (presets: {list(CAPACITY_PRESETS_MB)})",
    )
    parser.add_argument(
        "--capacity-slices",
        type=parse_capacity,
        nargs=nargs,
        help="Array size in slices, or 'inf' (overrides --capacity-mb)",
    )
    parser.add_argument(
        "--order",
        choices=["sequential", "zigzag"],
        default="sequential",
        help="Row traversal order",
    )
    parser.add_argument("--cost-config", help="YAML cost model (ns / pJ)")


def as_list(value: object) -> list:
    if value is None:
        return []
    return value if isinstance(value, list) else [value]


def resolve_capacities(
    args: argparse.Namespace, cfg: SliceConfig
) -> list[int | None]:
    """Capacities in slices from --capacity-slices, else --capacity-mb, else 8 MB."""
    slices = getattr(args, "capacity_slices", None)
    if slices is not None:
        return as_list(slices)
    megabytes = as_list(getattr(args, "capacity_mb", None)) or [CAPACITY_PRESETS_MB[0]]
    return [capacity_from_megabytes(mb, cfg) for mb in megabytes]


def load_cost(args: argparse.Namespace) -> CostConfig:
    path = getattr(args, "cost_config", None)
    if not path:
        LOGGER.debug("No cost model given, using placeholder unit costs")
        return CostConfig.placeholder_costs()
    return load_cost_config(path)


def provenance(config: dict) -> dict[str, str]:
    return {
        "tool": "pimtc",
        "version": TOOL_VERSION,
        "config_hash": config_hash(config),
    }


def write_json_report(path: str | Path, config: dict, body: dict) -> None:
    """Write body with a provenance block and the config echo."""
    report = {"provenance": provenance(config), "config": config, **body}
    with open(path, "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    LOGGER.info(f"Report written to {path}")


def percent(value: float) -> str:
    return f"{value * 100:.5f}%"


def format_capacity(capacity: int | None) -> str:
    return "inf" if capacity is None else str(capacity)
