import time
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

from pimtc.config import LOGGER, REPLACEMENT_REDUCTION_BAND
from pimtc.errors import Error
from pimtc.models.graph import Graph, OrientedAdjacency
from pimtc.models.simulation import CostConfig, ReplacementPolicy, RowOrder, SimReport
from pimtc.models.slicing import CompressionMetrics, SliceConfig
from pimtc.services.graph_io import load_edge_list, orient, random_graph, sparsity
from pimtc.services.kernel import (
    count_triangles_bitwise,
    count_triangles_oracle,
    count_triangles_trace,
)
from pimtc.services.pim_sim import build_access_trace, simulate
from pimtc.services.slicing import compress, measured_metrics

CountEngine = Callable[[Graph, OrientedAdjacency], int]

ENGINES: dict[str, CountEngine] = {
    "bitwise": lambda graph, adj: count_triangles_bitwise(adj),
    "oracle": lambda graph, adj: count_triangles_oracle(graph),
    "trace": lambda graph, adj: count_triangles_trace(graph),
}

# Self-test sweep: G(n, p) densities and simulator settings
SELFTEST_PROBABILITIES = (0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9)
SELFTEST_CAPACITIES: tuple[int | None, ...] = (1, 2, 8, None)
SELFTEST_SLICE_LENGTH = 8


@dataclass
class GraphSummary:
    """Where a graph came from and what normalization removed."""

    source: str
    vertex_count: int
    edge_count: int
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0

    @classmethod
    def of(cls, source: str, graph: Graph) -> "GraphSummary":
        return cls(
            source=source,
            vertex_count=graph.vertex_count,
            edge_count=graph.edge_count,
            dropped_self_loops=graph.dropped_self_loops,
            dropped_duplicates=graph.dropped_duplicates,
        )

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "dropped_self_loops": self.dropped_self_loops,
            "dropped_duplicates": self.dropped_duplicates,
        }


@dataclass
class CountReport:
    graph: GraphSummary
    engine: str
    triangles: int
    seconds: float

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "engine": self.engine,
            "triangles": self.triangles,
            "seconds": self.seconds,
        }


@dataclass
class CompressStatsReport:
    """Compression metrics for each requested slice length."""

    graph: GraphSummary
    alpha: float
    metrics: list[CompressionMetrics] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "alpha": self.alpha,
            "metrics": [m.to_dict() for m in self.metrics],
        }


@dataclass
class SimulationReport:
    graph: GraphSummary
    slice_config: SliceConfig
    report: SimReport

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "slice_config": self.slice_config.to_dict(),
            **self.report.to_dict(),
        }


@dataclass
class PolicyComparisonRow:
    """LRU and PRIORITY runs over the same trace and capacity."""

    capacity_slices: int | None
    lru: SimReport
    priority: SimReport

    @property
    def replacement_reduction(self) -> float:
        """Relative drop in replacements going from LRU to PRIORITY."""
        if not self.lru.replacements:
            return 0.0
        return 1.0 - self.priority.replacements / self.lru.replacements

    @property
    def priority_dominates(self) -> bool:
        return self.priority.misses <= self.lru.misses

    def to_dict(self) -> dict:
        return {
            "capacity_slices": self.capacity_slices,
            "lru": self.lru.to_dict(),
            "priority": self.priority.to_dict(),
            "replacement_reduction": self.replacement_reduction,
            "priority_dominates": self.priority_dominates,
        }


@dataclass
class PolicyComparison:
    graph: GraphSummary
    slice_config: SliceConfig
    order: RowOrder
    rows: list[PolicyComparisonRow] = field(default_factory=list)

    @property
    def max_replacement_reduction(self) -> float:
        return max((row.replacement_reduction for row in self.rows), default=0.0)

    @property
    def reduction_outside_band(self) -> bool:
        low, high = REPLACEMENT_REDUCTION_BAND
        return not low <= self.max_replacement_reduction <= high

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "slice_config": self.slice_config.to_dict(),
            "order": self.order.value,
            "rows": [row.to_dict() for row in self.rows],
            "max_replacement_reduction": self.max_replacement_reduction,
            "reduction_outside_band": self.reduction_outside_band,
        }


@dataclass
class SelfTestReport:
    """Agreement of engines and simulator over seeded random graphs."""

    seed: int
    trials: int
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "checks": self.checks,
            "passed": self.passed,
            "failures": self.failures,
        }


def _capacity_key(capacity: int | None) -> tuple[bool, int]:
    # Unbounded sorts last
    return (capacity is None, capacity or 0)


class AnalysisWorkflow:
    """
    High-level runs tying loading, counting, compression and simulation
    together. Each run loads its input once.
    """

    def __init__(self, loader: Callable[[str | Path], Graph] = load_edge_list) -> None:
        self.loader = loader

    def load(self, path: str | Path) -> tuple[Graph, OrientedAdjacency]:
        graph = self.loader(path)
        if graph.dropped_self_loops or graph.dropped_duplicates:
            LOGGER.warning(
                f"{path}: dropped {graph.dropped_self_loops} self-loops, "
                f"{graph.dropped_duplicates} duplicate edge records"
            )
        return graph, orient(graph)

    def count(self, path: str | Path, engine: str = "bitwise") -> CountReport:
        graph, adj = self.load(path)
        started = time.perf_counter()
        triangles = ENGINES[engine](graph, adj)
        seconds = time.perf_counter() - started
        return CountReport(
            graph=GraphSummary.of(str(path), graph),
            engine=engine,
            triangles=triangles,
            seconds=seconds,
        )

    def compress_stats(
        self, path: str | Path, slice_lengths: list[int], index_width: int
    ) -> CompressStatsReport:
        graph, adj = self.load(path)
        report = CompressStatsReport(
            graph=GraphSummary.of(str(path), graph),
            alpha=sparsity(graph) if graph.vertex_count else 1.0,
        )
        for slice_length in slice_lengths:
            cfg = SliceConfig(slice_length=slice_length, index_width=index_width)
            report.metrics.append(measured_metrics(compress(adj, cfg)))
        return report

    def simulate(
        self,
        path: str | Path,
        cfg: SliceConfig,
        policy: ReplacementPolicy,
        capacity_slices: int | None,
        cost: CostConfig,
        order: RowOrder = RowOrder.SEQUENTIAL,
    ) -> SimulationReport:
        graph, adj = self.load(path)
        report = simulate(compress(adj, cfg), policy, capacity_slices, cost, order)
        return SimulationReport(
            graph=GraphSummary.of(str(path), graph), slice_config=cfg, report=report
        )

    def compare_policies(
        self,
        path: str | Path,
        capacities: list[int | None],
        cfg: SliceConfig,
        cost: CostConfig,
        order: RowOrder = RowOrder.SEQUENTIAL,
    ) -> PolicyComparison:
        """Both policies per capacity over one shared trace; rows by capacity."""
        graph, adj = self.load(path)
        cg = compress(adj, cfg)
        trace = build_access_trace(cg, order)

        comparison = PolicyComparison(
            graph=GraphSummary.of(str(path), graph), slice_config=cfg, order=order
        )
        for capacity in sorted(set(capacities), key=_capacity_key):
            lru = simulate(
                cg, ReplacementPolicy.LRU, capacity, cost, order, trace=trace
            )
            priority = simulate(
                cg, ReplacementPolicy.PRIORITY, capacity, cost, order, trace=trace
            )
            comparison.rows.append(
                PolicyComparisonRow(
                    capacity_slices=capacity, lru=lru, priority=priority
                )
            )
        return comparison

    def self_test(
        self, trials: int, seed: int, max_vertices: int = 64
    ) -> SelfTestReport:
        """
        Run every count engine and every simulator setting on seeded G(n, p)
        graphs and record each disagreement.
        """
        report = SelfTestReport(seed=seed, trials=trials)
        cost = CostConfig.placeholder_costs()
        cfg = SliceConfig(slice_length=SELFTEST_SLICE_LENGTH)

        for trial in range(trials):
            n = 1 + (trial * 7) % max_vertices
            p = SELFTEST_PROBABILITIES[trial % len(SELFTEST_PROBABILITIES)]
            label = f"trial {trial} (n={n}, p={p}, seed={seed + trial})"
            try:
                self._check_graph(random_graph(n, p, seed + trial), cfg, cost, report)
            except Error as e:
                report.failures.append(f"{label}: {e}")
                continue
            LOGGER.debug(f"{label}: ok")
        return report

    def _check_graph(
        self,
        graph: Graph,
        cfg: SliceConfig,
        cost: CostConfig,
        report: SelfTestReport,
    ) -> None:
        adj = orient(graph)
        counts = {name: engine(graph, adj) for name, engine in ENGINES.items()}
        report.checks += 1
        if len(set(counts.values())) != 1:
            report.failures.append(f"engines disagree: {counts}")
            return

        expected = counts["bitwise"]
        cg = compress(adj, cfg)
        for order in RowOrder:
            trace = build_access_trace(cg, order)
            for capacity in SELFTEST_CAPACITIES:
                runs = {
                    policy: simulate(cg, policy, capacity, cost, order, trace=trace)
                    for policy in ReplacementPolicy
                }
                report.checks += 1
                for policy, run in runs.items():
                    if run.triangles != expected:
                        report.failures.append(
                            f"{policy.value}/{order.value}/cap={capacity}: "
                            f"simulated {run.triangles}, expected {expected}"
                        )
                lru = runs[ReplacementPolicy.LRU]
                priority = runs[ReplacementPolicy.PRIORITY]
                if priority.misses > lru.misses:
                    report.failures.append(
                        f"{order.value}/cap={capacity}: priority misses "
                        f"{priority.misses} exceed LRU misses {lru.misses}"
                    )
