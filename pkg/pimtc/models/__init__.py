from .graph import Graph, OrientedAdjacency
from .simulation import (
    CostConfig,
    ReplacementPolicy,
    RowOrder,
    SimCounters,
    SimReport,
    SliceId,
    SliceTask,
)
from .slicing import CompressedGraph, CompressionMetrics, Slice, SliceConfig

__all__ = [
    "CompressedGraph",
    "CompressionMetrics",
    "CostConfig",
    "Graph",
    "OrientedAdjacency",
    "ReplacementPolicy",
    "RowOrder",
    "SimCounters",
    "SimReport",
    "Slice",
    "SliceConfig",
    "SliceId",
    "SliceTask",
]
