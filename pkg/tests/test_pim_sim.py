"""Tests for the memory-array data-flow simulator."""

import math
from unittest.mock import patch

import pytest

from pimtc.errors import ConfigError, SimulationStateError
from pimtc.models.graph import Graph, OrientedAdjacency
from pimtc.models.simulation import ReplacementPolicy, RowOrder, SimReport
from pimtc.models.slicing import SliceConfig
from pimtc.services.graph_io import orient, random_graph
from pimtc.services.kernel import count_triangles_bitwise
from pimtc.services.pim_sim import (
    NEVER,
    MemoryArrayState,
    build_access_trace,
    capacity_from_megabytes,
    evict,
    evict_lru,
    evict_priority,
    next_use_positions,
    simulate,
)
from pimtc.services.slicing import compress
from pimtc.utils import bitcount
from tests.graph_suite import ORACLE_SEEDS, oracle_graph

LRU = ReplacementPolicy.LRU
PRIORITY = ReplacementPolicy.PRIORITY
CAPACITIES = (1, 2, 8, None)


def naive_trace(
    adj: OrientedAdjacency, slice_length: int, order: RowOrder
) -> list[tuple[int, int, int]]:
    """(row, column, ordinal) tasks built straight from the adjacency lists."""
    tasks = []
    forward = True
    for i in range(adj.vertex_count):
        columns = list(adj.successors[i])
        if not columns:
            continue
        if order is RowOrder.ZIGZAG and not forward:
            columns.reverse()
        forward = not forward

        row_ordinals = {t // slice_length for t in adj.successors[i]}
        for j in columns:
            col_ordinals = {t // slice_length for t in adj.predecessors[j]}
            for k in sorted(row_ordinals & col_ordinals):
                tasks.append((i, j, k))
    return tasks


def naive_replay(
    adj: OrientedAdjacency,
    slice_length: int,
    policy: ReplacementPolicy,
    capacity: int | None,
    order: RowOrder = RowOrder.SEQUENTIAL,
    victims: list[tuple[int, int]] | None = None,
) -> dict[str, int]:
    """Step-by-step replay with list residency and linear next-use scans.

    Evicted slice ids are appended to victims, when given, in eviction order.
    """
    trace = naive_trace(adj, slice_length, order)
    resident: list[tuple[int, int]] = []  # least recently used first
    counts = dict(hits=0, misses=0, replacements=0, row_writes=0, triangles=0)
    buffer_row, buffer_ordinals = None, set()

    def next_use(slice_id, position):
        for later in range(position + 1, len(trace)):
            if trace[later][1:] == slice_id:
                return later
        return math.inf

    for position, (i, j, k) in enumerate(trace):
        if i != buffer_row:
            buffer_row, buffer_ordinals = i, set()
        if k not in buffer_ordinals:
            buffer_ordinals.add(k)
            counts["row_writes"] += 1

        slice_id = (j, k)
        if slice_id in resident:
            counts["hits"] += 1
            resident.remove(slice_id)
        else:
            counts["misses"] += 1
            if capacity is not None and len(resident) == capacity:
                if policy is LRU:
                    victim = resident[0]
                else:
                    # max keeps the first maximum, so ties go to the smaller id
                    victim = max(sorted(resident), key=lambda s: next_use(s, position))
                resident.remove(victim)
                counts["replacements"] += 1
                if victims is not None:
                    victims.append(victim)
        resident.append(slice_id)

        mask = ((1 << slice_length) - 1) << (k * slice_length)
        counts["triangles"] += bitcount(adj.row(i) & adj.column(j) & mask)
    return counts


def assert_conserved(report: SimReport) -> None:
    c = report.counters
    assert c.hits + c.misses == c.column_loads_requested
    assert c.column_writes == c.misses
    assert c.replacements <= c.misses
    assert c.compute_ops == c.column_loads_requested
    if report.capacity_slices is not None:
        assert c.misses - c.replacements <= report.capacity_slices


@pytest.fixture
def worked_cg(worked_adj):
    """Worked example held in a single slice per vector."""
    return compress(worked_adj, SliceConfig(slice_length=4))


@pytest.fixture
def cyclic_cg():
    """Rows 0..4 each link to columns 5, 6 and 7: cyclic reuse of 3 slices."""
    graph = Graph.from_edges(8, [(i, j) for i in range(5) for j in (5, 6, 7)])
    return compress(orient(graph), SliceConfig(slice_length=8))


class TestAccessTrace:
    """Test cases for build_access_trace."""

    def test_sequential_order(self, worked_cg):
        """Test rows ascending with set bits ascending."""
        trace = build_access_trace(worked_cg, RowOrder.SEQUENTIAL)

        assert [(t.row, t.col) for t in trace] == [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
        ]

    def test_zigzag_order(self, worked_cg):
        """Test that every other row is walked in descending order."""
        trace = build_access_trace(worked_cg, RowOrder.ZIGZAG)

        assert [(t.row, t.col) for t in trace] == [
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 2),
            (2, 3),
        ]

    def test_empty_graph(self):
        """Test that no edges give no tasks."""
        cg = compress(orient(Graph.from_edges(5, [])), SliceConfig())

        assert build_access_trace(cg) == []

    def test_tasks_carry_slice_ids(self, worked_adj):
        """Test row and column slice ids at |S|=2."""
        cg = compress(worked_adj, SliceConfig(slice_length=2, index_width=1))
        trace = build_access_trace(cg)

        assert [(t.row_slice, t.col_slice) for t in trace] == [
            ((0, 0), (1, 0)),
            ((0, 0), (2, 0)),
            ((1, 1), (3, 1)),
            ((2, 1), (3, 1)),
        ]

    @pytest.mark.parametrize("order", list(RowOrder))
    def test_matches_naive_trace(self, order):
        """Test the slice-filtered trace against the adjacency-list build."""
        adj = orient(random_graph(40, 0.2, seed=8))
        trace = build_access_trace(compress(adj, SliceConfig(slice_length=4)), order)

        assert [(t.row, t.col, t.ordinal) for t in trace] == naive_trace(adj, 4, order)

    def test_next_use_positions(self, worked_cg):
        """Test forward distances to the next request of the same column slice."""
        positions = next_use_positions(build_access_trace(worked_cg))

        assert positions == [NEVER, 2, NEVER, 4, NEVER]


class TestWorkedTrace:
    """The four-vertex example walked through the array."""

    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    @pytest.mark.parametrize("capacity", [3, 4, None])
    def test_roomy_array(self, worked_cg, unit_costs, policy, capacity):
        """Test reuse of C_2 and C_3 with no replacements."""
        report = simulate(worked_cg, policy, capacity, unit_costs)
        c = report.counters

        assert report.triangles == 2
        assert (c.hits, c.misses, c.replacements) == (2, 3, 0)
        assert c.row_writes == 3
        assert c.column_writes == 3
        assert c.compute_ops == 5
        assert report.total_latency == pytest.approx(11.0)
        assert report.total_energy == pytest.approx(11.0)
        assert report.hit_ratio == pytest.approx(0.4)

    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    def test_single_slice_array(self, worked_cg, unit_costs, policy):
        """Test that each change of column misses and the count holds."""
        report = simulate(worked_cg, policy, 1, unit_costs)

        assert report.triangles == 2
        assert (report.hits, report.misses, report.replacements) == (2, 3, 2)

    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    def test_two_slice_array_evicts_c1(self, worked_cg, unit_costs, policy):
        """Test one replacement when C_3 arrives."""
        report = simulate(worked_cg, policy, 2, unit_costs)

        assert (report.hits, report.misses, report.replacements) == (2, 3, 1)

    def test_lru_victim_is_c1(self):
        """Test C_1 goes before the more recently used C_2."""
        state = MemoryArrayState(capacity_slices=2, policy=LRU)
        state.admit((1, 0))
        state.admit((2, 0))
        state.touch((2, 0))

        assert evict_lru(state) == (1, 0)
        assert state.resident == {(2, 0)}

    def test_sliced_worked_example(self, worked_adj, unit_costs):
        """Test |S|=2: four tasks, triangles still 2."""
        cg = compress(worked_adj, SliceConfig(slice_length=2, index_width=1))
        report = simulate(cg, PRIORITY, None, unit_costs)

        assert report.triangles == 2
        assert report.counters.column_loads_requested == 4
        assert report.valid_pair_ratio == pytest.approx(0.4)
        assert report.compression_rate == pytest.approx(0.75)


class TestEviction:
    """Test cases for evict_lru and evict_priority."""

    def test_lru_oldest_first(self):
        """Test a, b, c then evict gives a."""
        state = MemoryArrayState(capacity_slices=3, policy=LRU)
        for slice_id in [(0, 0), (1, 0), (2, 0)]:
            state.admit(slice_id)

        assert evict_lru(state) == (0, 0)

    def test_lru_touch_refreshes(self):
        """Test a, b, c, touch a then evict gives b."""
        state = MemoryArrayState(capacity_slices=3, policy=LRU)
        for slice_id in [(0, 0), (1, 0), (2, 0)]:
            state.admit(slice_id)
        state.touch((0, 0))

        assert evict_lru(state) == (1, 0)

    def test_priority_never_again_first(self):
        """Test that a slice with no future request is evicted first."""
        state = MemoryArrayState(capacity_slices=3, policy=PRIORITY)
        state.admit((0, 0), next_use=9)
        state.admit((1, 0), next_use=4)
        state.admit((2, 0), next_use=NEVER)

        assert evict_priority(state, position=2) == (2, 0)
        assert evict_priority(state, position=2) == (0, 0)
        assert state.resident == {(1, 0)}

    def test_priority_tie_goes_to_smaller_id(self):
        """Test equal next-use distances."""
        state = MemoryArrayState(capacity_slices=3, policy=PRIORITY)
        state.admit((3, 1))
        state.admit((3, 0))
        state.admit((7, 0), next_use=5)

        assert evict_priority(state, position=1) == (3, 0)

    def test_priority_skips_superseded_entries(self):
        """Test that a touched slice is ranked by its newest next use."""
        state = MemoryArrayState(capacity_slices=2, policy=PRIORITY)
        state.admit((0, 0), next_use=20)
        state.admit((1, 0), next_use=10)
        state.touch((0, 0), next_use=5)

        assert evict_priority(state, position=3) == (1, 0)

    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    def test_evict_empty_array(self, policy):
        """Test eviction with nothing resident."""
        state = MemoryArrayState(capacity_slices=1, policy=policy)

        with pytest.raises(SimulationStateError):
            if policy is LRU:
                evict_lru(state)
            else:
                evict_priority(state, position=0)

    def test_priority_stale_next_use(self):
        """Test that a next use already in the past is an internal error."""
        state = MemoryArrayState(capacity_slices=1, policy=PRIORITY)
        state.admit((0, 0), next_use=1)

        with pytest.raises(SimulationStateError):
            evict_priority(state, position=5)

    def test_admit_into_full_array(self):
        """Test that writing past capacity is refused."""
        state = MemoryArrayState(capacity_slices=1, policy=LRU)
        state.admit((0, 0))

        with pytest.raises(SimulationStateError):
            state.admit((1, 0))

    def test_row_buffer_overwrites(self):
        """Test row-slice writes per new (row, ordinal)."""
        state = MemoryArrayState(capacity_slices=None, policy=LRU)

        assert state.load_row_slice(0, 0) is True
        assert state.load_row_slice(0, 0) is False
        assert state.load_row_slice(0, 1) is True
        assert state.load_row_slice(1, 0) is True
        assert state.load_row_slice(0, 0) is True


class TestReplacementPolicies:
    """LRU against farthest-next-use replacement."""

    def test_cyclic_reuse_lru(self, cyclic_cg, unit_costs):
        """Test that LRU misses every request of a 3-slice cycle in 2 slots."""
        report = simulate(cyclic_cg, LRU, 2, unit_costs)

        assert (report.hits, report.misses, report.replacements) == (0, 15, 13)

    def test_cyclic_reuse_priority(self, cyclic_cg, unit_costs):
        """Test that priority replacement strictly beats LRU."""
        report = simulate(cyclic_cg, PRIORITY, 2, unit_costs)

        assert (report.hits, report.misses, report.replacements) == (6, 9, 7)
        assert report.triangles == 0

    @pytest.mark.parametrize("seed", range(15))
    def test_priority_dominates(self, seed, unit_costs):
        """Test priority misses never exceed LRU misses on the same trace."""
        adj = orient(random_graph(48, 0.15 + 0.05 * (seed % 5), seed))
        cg = compress(adj, SliceConfig(slice_length=8))
        for order in RowOrder:
            trace = build_access_trace(cg, order)
            for capacity in (1, 2, 3, 4, 8, 16):
                lru = simulate(cg, LRU, capacity, unit_costs, order, trace=trace)
                pri = simulate(cg, PRIORITY, capacity, unit_costs, order, trace=trace)
                assert pri.misses <= lru.misses
                assert pri.replacements <= lru.replacements


class TestAgainstReplayOracle:
    """Counters match an independent step-by-step replay."""

    @pytest.mark.parametrize("seed", range(8))
    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    @pytest.mark.parametrize("order", list(RowOrder))
    def test_counters_match(self, seed, policy, order, unit_costs):
        """Test hits, misses, replacements, row writes and triangles."""
        adj = orient(random_graph(16 + seed * 3, 0.2, seed))
        slice_length = (4, 8, 16)[seed % 3]
        cg = compress(adj, SliceConfig(slice_length=slice_length))

        for capacity in (1, 2, 3, 4, None):
            report = simulate(cg, policy, capacity, unit_costs, order)
            expected = naive_replay(adj, slice_length, policy, capacity, order)
            c = report.counters

            assert c.hits == expected["hits"]
            assert c.misses == expected["misses"]
            assert c.replacements == expected["replacements"]
            assert c.row_writes == expected["row_writes"]
            assert c.triangles == expected["triangles"]

    def test_pinned_random_graph(self, unit_costs):
        """Test G(64, 0.2) with 4 slots against the replay, both policies."""
        adj = orient(random_graph(64, 0.2, seed=64))
        cg = compress(adj, SliceConfig(slice_length=8))

        lru = simulate(cg, LRU, 4, unit_costs)
        pri = simulate(cg, PRIORITY, 4, unit_costs)

        assert lru.misses == naive_replay(adj, 8, LRU, 4)["misses"]
        assert pri.misses == naive_replay(adj, 8, PRIORITY, 4)["misses"]
        assert pri.misses <= lru.misses

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    @pytest.mark.parametrize("order", list(RowOrder))
    def test_victims_match(self, seed, policy, order, unit_costs):
        """Test that each replacement evicts the same slice as the replay."""
        adj = orient(random_graph(24 + seed * 4, 0.25, seed))
        cg = compress(adj, SliceConfig(slice_length=8))

        for capacity in (1, 2, 3, 5):
            evicted: list[tuple[int, int]] = []

            def recording_evict(state, position):
                victim = evict(state, position)
                evicted.append(victim)
                return victim

            with patch("pimtc.services.pim_sim.evict", side_effect=recording_evict):
                report = simulate(cg, policy, capacity, unit_costs, order)
            expected: list[tuple[int, int]] = []
            naive_replay(adj, 8, policy, capacity, order, victims=expected)

            assert evicted == expected
            assert len(evicted) == report.replacements

    def test_pinned_sparse_graph(self, unit_costs):
        """Test G(256, 0.05) at |S| = 64 with 16 slots against fixed counts."""
        adj = orient(random_graph(256, 0.05, seed=1))
        cg = compress(adj, SliceConfig(slice_length=64))

        lru = simulate(cg, LRU, 16, unit_costs)
        pri = simulate(cg, PRIORITY, 16, unit_costs)

        assert (lru.hits, lru.misses, lru.replacements) == (96, 2902, 2886)
        assert (pri.hits, pri.misses, pri.replacements) == (715, 2283, 2267)
        expected = naive_replay(adj, 64, LRU, 16)
        assert (expected["hits"], expected["misses"]) == (96, 2902)


class TestFlowCorrectness:
    """The data flow never changes the triangle count."""

    @pytest.mark.parametrize("seed", range(25))
    def test_triangles_independent_of_flow(self, seed, unit_costs):
        """Test every policy, capacity, order and slice length."""
        n = 1 + (seed * 7) % 64
        p = (0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9)[seed % 7]
        adj = orient(random_graph(n, p, seed))
        expected = count_triangles_bitwise(adj)

        for slice_length in (1, 4, 8, 64):
            cg = compress(adj, SliceConfig(slice_length=slice_length))
            for order in RowOrder:
                trace = build_access_trace(cg, order)
                for policy in ReplacementPolicy:
                    for capacity in CAPACITIES:
                        report = simulate(
                            cg, policy, capacity, unit_costs, order, trace=trace
                        )
                        assert report.triangles == expected
                        assert_conserved(report)

    @pytest.mark.parametrize("seed", ORACLE_SEEDS)
    def test_oracle_suite(self, seed, unit_costs):
        """Test exact counts and priority dominance on every oracle graph."""
        adj = orient(oracle_graph(seed))
        expected = count_triangles_bitwise(adj)
        cg = compress(adj, SliceConfig(slice_length=8))

        for order in RowOrder:
            trace = build_access_trace(cg, order)
            for capacity in CAPACITIES:
                lru, pri = (
                    simulate(cg, policy, capacity, unit_costs, order, trace=trace)
                    for policy in (LRU, PRIORITY)
                )
                assert lru.triangles == expected
                assert pri.triangles == expected
                assert_conserved(lru)
                assert_conserved(pri)
                assert pri.misses <= lru.misses

    @pytest.mark.parametrize("policy", list(ReplacementPolicy))
    def test_unbounded_array(self, policy, unit_costs):
        """Test no replacements and one miss per distinct column slice."""
        adj = orient(random_graph(50, 0.3, seed=1))
        cg = compress(adj, SliceConfig(slice_length=8))
        trace = build_access_trace(cg)
        report = simulate(cg, policy, None, unit_costs)

        assert report.replacements == 0
        assert report.misses == len({task.col_slice for task in trace})

    def test_deterministic(self, unit_costs):
        """Test that identical inputs give identical reports."""
        adj = orient(random_graph(40, 0.3, seed=2))
        cg = compress(adj, SliceConfig(slice_length=8))

        assert simulate(cg, PRIORITY, 3, unit_costs) == simulate(
            cg, PRIORITY, 3, unit_costs
        )


class TestCapacity:
    """Test cases for capacity handling."""

    @pytest.mark.parametrize("capacity", [0, -3])
    def test_capacity_below_one(self, worked_cg, unit_costs, capacity):
        """Test that an array needs at least one slot."""
        with pytest.raises(ConfigError):
            simulate(worked_cg, LRU, capacity, unit_costs)

    def test_reserved_row_slices(self, worked_cg, unit_costs):
        """Test that reserving row slots shrinks the column capacity."""
        reserved = simulate(worked_cg, LRU, 3, unit_costs, reserved_row_slices=1)
        plain = simulate(worked_cg, LRU, 2, unit_costs)

        assert reserved.counters == plain.counters
        assert reserved.capacity_slices == 3

    def test_reserved_row_slices_leave_no_room(self, worked_cg, unit_costs):
        """Test that the row reservation cannot take the whole array."""
        with pytest.raises(ConfigError):
            simulate(worked_cg, LRU, 2, unit_costs, reserved_row_slices=2)

    @pytest.mark.parametrize(
        "megabytes,slice_length,expected",
        [(8, 64, 1_048_576), (16, 64, 2_097_152), (8, 128, 524_288), (0.5, 64, 65_536)],
    )
    def test_capacity_from_megabytes(self, megabytes, slice_length, expected):
        """Test array bytes over slice bytes."""
        cfg = SliceConfig(slice_length=slice_length)

        assert capacity_from_megabytes(megabytes, cfg) == expected


class TestSimReport:
    """Test cases for SimReport serialization."""

    def test_to_dict_blocks(self, worked_cg, unit_costs):
        """Test the counters and cost_estimate blocks."""
        data = simulate(worked_cg, PRIORITY, None, unit_costs).to_dict()

        assert data["policy"] == "priority"
        assert data["order"] == "sequential"
        assert data["capacity_slices"] is None
        assert data["counters"]["triangles"] == 2
        assert data["counters"]["hits"] == 2
        assert data["counters"]["hit_ratio"] == pytest.approx(0.4)
        assert data["counters"]["write_ops_saved_ratio"] == pytest.approx(0.4)
        assert data["counters"]["replacement_ratio"] == 0.0
        assert data["cost_estimate"] == {
            "total_latency_ns": 11.0,
            "total_energy_pj": 11.0,
            "placeholder": True,
        }

    def test_empty_run_ratios(self, unit_costs):
        """Test that ratios are zero without any column request."""
        cg = compress(orient(Graph.from_edges(3, [])), SliceConfig())
        report = simulate(cg, LRU, 1, unit_costs)

        assert report.hit_ratio == 0.0
        assert report.replacement_ratio == 0.0
        assert report.total_latency == 0.0
