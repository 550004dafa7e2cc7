import math
from dataclasses import asdict, dataclass
from enum import Enum

from pimtc.errors import ConfigError

# (vector index, slice ordinal): column slice C_jS_k or row slice R_iS_k
SliceId = tuple[int, int]


class ReplacementPolicy(Enum):
    """Which resident column slice to swap out when the array is full."""

    LRU = "lru"
    # Farthest next use first; needs the whole access trace up front
    PRIORITY = "priority"


class RowOrder(Enum):
    """Order in which the set bits of each row are visited."""

    SEQUENTIAL = "sequential"
    ZIGZAG = "zigzag"


@dataclass(frozen=True)
class CostConfig:
    """
    Per-operation cost of the computational array.
    Latency in ns, energy in pJ.
    """

    write_latency: float = 0.0
    write_energy: float = 0.0
    compute_latency: float = 0.0
    compute_energy: float = 0.0
    buffer_lookup_cost: float = 0.0
    placeholder: bool = False

    def __post_init__(self) -> None:
        for name, value in self.costs().items():
            if not math.isfinite(value) or value < 0:
                raise ConfigError(
                    f"cost '{name}' must be finite and non-negative, got {value}"
                )

    @classmethod
    def placeholder_costs(cls) -> "CostConfig":
        """Unit costs; stands in until real array figures are supplied."""
        return cls(
            write_latency=1.0,
            write_energy=1.0,
            compute_latency=1.0,
            compute_energy=1.0,
            buffer_lookup_cost=0.0,
            placeholder=True,
        )

    def costs(self) -> dict[str, float]:
        return {
            "write_latency": self.write_latency,
            "write_energy": self.write_energy,
            "compute_latency": self.compute_latency,
            "compute_energy": self.compute_energy,
            "buffer_lookup_cost": self.buffer_lookup_cost,
        }

    def to_dict(self) -> dict[str, object]:
        return {
            "units": {"latency": "ns", "energy": "pJ"},
            **self.costs(),
            "placeholder": self.placeholder,
        }


@dataclass(frozen=True, slots=True)
class SliceTask:
    """One valid slice pair to AND in the array for oriented edge (row, col)."""

    row: int
    col: int
    ordinal: int
    row_payload: int
    col_payload: int

    @property
    def row_slice(self) -> SliceId:
        return (self.row, self.ordinal)

    @property
    def col_slice(self) -> SliceId:
        return (self.col, self.ordinal)


@dataclass
class SimCounters:
    """Raw event counts accumulated while walking an access trace."""

    triangles: int = 0
    column_loads_requested: int = 0
    hits: int = 0
    misses: int = 0
    replacements: int = 0
    row_writes: int = 0
    column_writes: int = 0
    compute_ops: int = 0
    buffer_lookups: int = 0


@dataclass(frozen=True)
class SimReport:
    """Outcome of one simulated run: counter facts plus cost-model estimates."""

    policy: ReplacementPolicy
    order: RowOrder
    capacity_slices: int | None
    counters: SimCounters
    total_latency: float
    total_energy: float
    cost: CostConfig
    compression_rate: float = 0.0
    valid_pair_ratio: float = 0.0

    @property
    def triangles(self) -> int:
        return self.counters.triangles

    @property
    def hits(self) -> int:
        return self.counters.hits

    @property
    def misses(self) -> int:
        return self.counters.misses

    @property
    def replacements(self) -> int:
        return self.counters.replacements

    @property
    def hit_ratio(self) -> float:
        requested = self.counters.column_loads_requested
        return self.counters.hits / requested if requested else 0.0

    @property
    def write_ops_saved_ratio(self) -> float:
        """Column WRITEs avoided by reuse, relative to loading on every request."""
        return self.hit_ratio

    @property
    def replacement_ratio(self) -> float:
        requested = self.counters.column_loads_requested
        return self.counters.replacements / requested if requested else 0.0

    def to_dict(self) -> dict[str, object]:
        return {
            "policy": self.policy.value,
            "order": self.order.value,
            "capacity_slices": self.capacity_slices,
            "counters": {
                **asdict(self.counters),
                "hit_ratio": self.hit_ratio,
                "write_ops_saved_ratio": self.write_ops_saved_ratio,
                "replacement_ratio": self.replacement_ratio,
                "compression_rate": self.compression_rate,
                "valid_pair_ratio": self.valid_pair_ratio,
            },
            "cost_estimate": {
                "total_latency_ns": self.total_latency,
                "total_energy_pj": self.total_energy,
                "placeholder": self.cost.placeholder,
            },
        }
