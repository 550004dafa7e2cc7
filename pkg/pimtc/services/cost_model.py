"""Cost-model configuration and latency/energy aggregation."""

from pathlib import Path

import yaml

from pimtc.config import LOGGER
from pimtc.errors import ConfigError
from pimtc.models.simulation import CostConfig, SimCounters

EXPECTED_UNITS = {"latency": "ns", "energy": "pJ"}
COST_KEYS = (
    "write_latency",
    "write_energy",
    "compute_latency",
    "compute_energy",
    "buffer_lookup_cost",
)


def load_cost_config(path: str | Path) -> CostConfig:
    """
    Load a YAML cost model. The file must declare its units up front:

        units:
          latency: ns
          energy: pJ
        write_latency: 5.0
        ...

    Missing cost keys default to 0.
    """
    yaml_path = Path(path)
    if not yaml_path.exists():
        raise ConfigError(f"cost config '{path}' does not exist")

    try:
        with open(yaml_path) as f:
            raw = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"cost config '{path}' is not valid YAML: {e}") from e

    if not isinstance(raw, dict):
        raise ConfigError(f"cost config '{path}' must be a mapping")

    units = raw.pop("units", None)
    if units != EXPECTED_UNITS:
        raise ConfigError(
            f"cost config '{path}' must declare units {EXPECTED_UNITS}, got {units}"
        )

    placeholder = bool(raw.pop("placeholder", False))
    unknown = set(raw) - set(COST_KEYS)
    if unknown:
        raise ConfigError(
            f"cost config '{path}' has unknown keys: {sorted(unknown)}"
        )

    values: dict[str, float] = {}
    for key in COST_KEYS:
        value = raw.get(key, 0.0)
        if isinstance(value, bool) or not isinstance(value, int | float):
            raise ConfigError(f"cost '{key}' must be a number, got {value!r}")
        values[key] = float(value)

    cost = CostConfig(**values, placeholder=placeholder)
    LOGGER.debug(f"Loaded cost model from {path}: {cost.costs()}")
    return cost


def cost_totals(counters: SimCounters, cost: CostConfig) -> tuple[float, float]:
    """
    (total_latency, total_energy) for a finished run. Row and column slice
    writes share one write cost. Buffer lookups are charged on both axes.
    """
    writes = counters.row_writes + counters.column_writes
    latency = (
        writes * cost.write_latency
        + counters.compute_ops * cost.compute_latency
        + counters.buffer_lookups * cost.buffer_lookup_cost
    )
    energy = (
        writes * cost.write_energy
        + counters.compute_ops * cost.compute_energy
        + counters.buffer_lookups * cost.buffer_lookup_cost
    )
    return latency, energy
