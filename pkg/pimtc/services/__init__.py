"""
Service layer for pimtc.
Provides focused modules for different responsibilities:
- graph_io: edge-list loading, normalization and orientation
- kernel: bitwise triangle counting and its independent oracles
- slicing: valid-slice compression and compression metrics
- pim_sim: memory-array data-flow simulation with LRU / priority replacement
- cost_model: cost configuration and latency/energy totals
"""

from pimtc.services.cost_model import cost_totals, load_cost_config
from pimtc.services.graph_io import (
    load_edge_list,
    orient,
    random_graph,
    sparsity,
    write_edge_list,
)
from pimtc.services.kernel import (
    count_triangles_bitwise,
    count_triangles_oracle,
    count_triangles_trace,
)
from pimtc.services.pim_sim import (
    MemoryArrayState,
    build_access_trace,
    capacity_from_megabytes,
    evict_lru,
    evict_priority,
    simulate,
)
from pimtc.services.slicing import (
    analytic_compression_rate,
    compress,
    decompress,
    measured_metrics,
    read_compressed,
    valid_slice_pairs,
    write_compressed,
)

__all__ = [
    "MemoryArrayState",
    "analytic_compression_rate",
    "build_access_trace",
    "capacity_from_megabytes",
    "compress",
    "cost_totals",
    "count_triangles_bitwise",
    "count_triangles_oracle",
    "count_triangles_trace",
    "decompress",
    "evict_lru",
    "evict_priority",
    "load_cost_config",
    "load_edge_list",
    "measured_metrics",
    "orient",
    "random_graph",
    "read_compressed",
    "simulate",
    "sparsity",
    "valid_slice_pairs",
    "write_compressed",
    "write_edge_list",
]
