"""
Data-flow simulation of slice-pair AND+BitCount over a bounded memory array.

Row slices live in a one-row buffer that the next row overwrites; column
slices compete for the array capacity and are reused across rows. When the
array is full a resident column slice is swapped out, either the least
recently used one or the one whose next request lies farthest in the future.
"""

import heapq
import math
from collections import OrderedDict
from dataclasses import dataclass, field

from pimtc.errors import ConfigError, SimulationStateError
from pimtc.models.simulation import (
    CostConfig,
    ReplacementPolicy,
    RowOrder,
    SimCounters,
    SimReport,
    SliceId,
    SliceTask,
)
from pimtc.models.slicing import CompressedGraph, SliceConfig
from pimtc.services.cost_model import cost_totals
from pimtc.services.slicing import (
    compressed_size_bytes,
    ordinary_size_bytes,
    valid_slice_pairs,
)
from pimtc.utils import bitcount

NEVER = math.inf


@dataclass
class MemoryArrayState:
    """Residency and replacement bookkeeping of the computational array."""

    capacity_slices: int | None
    policy: ReplacementPolicy
    resident: set[SliceId] = field(default_factory=set)

    # LRU: oldest first
    recency: OrderedDict[SliceId, None] = field(default_factory=OrderedDict)
    # PRIORITY: next request position per resident, and a lazy max-heap on it
    next_use: dict[SliceId, float] = field(default_factory=dict)
    farthest: list[tuple[float, SliceId]] = field(default_factory=list)

    row_buffer_row: int | None = None
    row_buffer_slices: set[int] = field(default_factory=set)

    @property
    def is_full(self) -> bool:
        return (
            self.capacity_slices is not None
            and len(self.resident) >= self.capacity_slices
        )

    def touch(self, slice_id: SliceId, next_use: float = NEVER) -> None:
        """Record an access to a resident column slice."""
        if self.policy is ReplacementPolicy.LRU:
            if slice_id in self.recency:
                self.recency.move_to_end(slice_id)
            else:
                self.recency[slice_id] = None
        else:
            self.next_use[slice_id] = next_use
            heapq.heappush(self.farthest, (-next_use, slice_id))

    def admit(self, slice_id: SliceId, next_use: float = NEVER) -> None:
        """WRITE a column slice into a free array location."""
        if self.is_full:
            raise SimulationStateError(
                f"no free slot for {slice_id}: {len(self.resident)} resident"
            )
        self.resident.add(slice_id)
        self.touch(slice_id, next_use)

    def load_row_slice(self, row: int, ordinal: int) -> bool:
        """Returns True when the row slice has to be written."""
        if row != self.row_buffer_row:
            self.row_buffer_row = row
            self.row_buffer_slices = set()
        if ordinal in self.row_buffer_slices:
            return False
        self.row_buffer_slices.add(ordinal)
        return True


def evict_lru(state: MemoryArrayState) -> SliceId:
    """Swap out the resident column slice with the oldest last access."""
    if not state.recency:
        raise SimulationStateError("LRU eviction from an empty array")
    victim, _ = state.recency.popitem(last=False)
    state.resident.discard(victim)
    return victim


def evict_priority(state: MemoryArrayState, position: int) -> SliceId:
    """
    Swap out the resident column slice requested farthest after `position`.
    Slices never requested again go first; ties go to the smaller (j, k).
    """
    while state.farthest:
        negated, victim = heapq.heappop(state.farthest)
        next_use = -negated
        if victim not in state.resident or state.next_use.get(victim) != next_use:
            continue  # superseded heap entry
        if next_use <= position:
            raise SimulationStateError(
                f"stale next use {next_use} for {victim} at position {position}"
            )
        state.resident.discard(victim)
        del state.next_use[victim]
        return victim
    raise SimulationStateError("priority eviction from an empty array")


def evict(state: MemoryArrayState, position: int) -> SliceId:
    if state.policy is ReplacementPolicy.LRU:
        return evict_lru(state)
    return evict_priority(state, position)


def build_access_trace(
    cg: CompressedGraph, order: RowOrder = RowOrder.SEQUENTIAL
) -> list[SliceTask]:
    """
    Slice-pair tasks in processing order: rows ascending, set bits of each row
    ascending (SEQUENTIAL) or alternating direction row by row (ZIGZAG), and
    the valid pairs of each edge by ascending ordinal.
    """
    tasks: list[SliceTask] = []
    forward = True
    for i in range(cg.vertex_count):
        columns = cg.row_edges(i)
        if not columns:
            continue
        if order is RowOrder.ZIGZAG and not forward:
            columns.reverse()
        forward = not forward

        for j in columns:
            for row_piece, col_piece in valid_slice_pairs(cg, i, j):
                tasks.append(
                    SliceTask(
                        row=i,
                        col=j,
                        ordinal=row_piece.index,
                        row_payload=row_piece.payload,
                        col_payload=col_piece.payload,
                    )
                )
    return tasks


def next_use_positions(trace: list[SliceTask]) -> list[float]:
    """For each position, where the same column slice is requested next."""
    upcoming: dict[SliceId, float] = {}
    positions: list[float] = [NEVER] * len(trace)
    for position in range(len(trace) - 1, -1, -1):
        slice_id = trace[position].col_slice
        positions[position] = upcoming.get(slice_id, NEVER)
        upcoming[slice_id] = position
    return positions


def capacity_from_megabytes(megabytes: float, cfg: SliceConfig) -> int:
    """Array bytes / (|S| / 8) slices."""
    return int(megabytes * 2**20 * 8) // cfg.slice_length


def simulate(
    cg: CompressedGraph,
    policy: ReplacementPolicy,
    capacity_slices: int | None,
    cost: CostConfig,
    order: RowOrder = RowOrder.SEQUENTIAL,
    *,
    reserved_row_slices: int = 0,
    trace: list[SliceTask] | None = None,
) -> SimReport:
    """
    Walk the access trace against a simulated array.

    capacity_slices=None models an unbounded array. reserved_row_slices
    charges that many slices of the row buffer against the capacity. A
    precomputed trace for the same graph and order may be passed in to share
    it between runs.
    """
    column_capacity = capacity_slices
    if capacity_slices is not None:
        if capacity_slices < 1:
            raise ConfigError(
                f"capacity must be at least 1 slice, got {capacity_slices}"
            )
        column_capacity = capacity_slices - reserved_row_slices
        if column_capacity < 1:
            raise ConfigError(
                f"capacity {capacity_slices} leaves no room for column slices "
                f"after reserving {reserved_row_slices} for rows"
            )

    tasks = build_access_trace(cg, order) if trace is None else trace
    next_uses = (
        next_use_positions(tasks) if policy is ReplacementPolicy.PRIORITY else None
    )

    state = MemoryArrayState(capacity_slices=column_capacity, policy=policy)
    counters = SimCounters()
    for position, task in enumerate(tasks):
        next_use = next_uses[position] if next_uses is not None else NEVER
        _step(state, counters, position, task, next_use)

    latency, energy = cost_totals(counters, cost)
    ordinary = ordinary_size_bytes(cg.vertex_count)
    pair_slots = cg.edge_count * cg.config.slices_per_vector(cg.vertex_count)
    return SimReport(
        policy=policy,
        order=order,
        capacity_slices=capacity_slices,
        counters=counters,
        total_latency=latency,
        total_energy=energy,
        cost=cost,
        compression_rate=compressed_size_bytes(cg) / ordinary if ordinary else 0.0,
        valid_pair_ratio=len(tasks) / pair_slots if pair_slots else 0.0,
    )


def _step(
    state: MemoryArrayState,
    counters: SimCounters,
    position: int,
    task: SliceTask,
    next_use: float,
) -> None:
    if state.load_row_slice(task.row, task.ordinal):
        counters.row_writes += 1

    slice_id = task.col_slice
    counters.column_loads_requested += 1
    counters.buffer_lookups += 1
    if slice_id in state.resident:
        counters.hits += 1
        state.touch(slice_id, next_use)
    else:
        counters.misses += 1
        if state.is_full:
            evict(state, position)
            counters.replacements += 1
        state.admit(slice_id, next_use)
        counters.column_writes += 1

    if (
        state.capacity_slices is not None
        and len(state.resident) > state.capacity_slices
    ):
        raise SimulationStateError(
            f"{len(state.resident)} column slices resident, "
            f"capacity is {state.capacity_slices}"
        )

    counters.compute_ops += 1
    counters.triangles += bitcount(task.row_payload & task.col_payload)
