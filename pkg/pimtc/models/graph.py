from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from pimtc.errors import GraphInvariantError


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph over dense vertex ids [0, vertex_count).
    Edges are stored as (min, max) pairs.
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    # Load statistics, kept for reporting
    original_ids: tuple[int, ...] = field(default=(), compare=False)
    dropped_self_loops: int = field(default=0, compare=False)
    dropped_duplicates: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphInvariantError(
                f"vertex_count must be non-negative, got {self.vertex_count}"
            )
        for u, v in self.edges:
            if u == v:
                raise GraphInvariantError(f"self-loop on vertex {u}")
            if u > v:
                raise GraphInvariantError(
                    f"edge ({u}, {v}) is not stored as (min, max)"
                )
            if u < 0 or v >= self.vertex_count:
                raise GraphInvariantError(
                    f"edge ({u}, {v}) outside vertex range [0, {self.vertex_count})"
                )

    @classmethod
    def from_edges(
        cls, vertex_count: int, pairs: Iterable[tuple[int, int]]
    ) -> "Graph":
        """Build a graph from pairs in any direction; duplicates collapse."""
        return cls(
            vertex_count=vertex_count,
            edges=frozenset((min(u, v), max(u, v)) for u, v in pairs),
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbor_sets(self) -> list[set[int]]:
        neighbors: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return neighbors


@dataclass(frozen=True)
class OrientedAdjacency:
    """
    Strictly upper-triangular bit-matrix of an undirected graph.

    Row i holds bit j iff {i, j} is an edge and i < j. Rows and columns are
    kept as sorted index tuples and materialized as integer bit-vectors
    (bit t of the integer is matrix cell t) on demand.
    """

    vertex_count: int
    successors: tuple[tuple[int, ...], ...]
    predecessors: tuple[tuple[int, ...], ...]

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.successors)

    def row(self, i: int) -> int:
        """R_i as a bit-vector."""
        return _to_bits(self.successors[i])

    def column(self, j: int) -> int:
        """C_j = A[*][j] as a bit-vector."""
        return _to_bits(self.predecessors[j])

    def rows(self) -> list[int]:
        return [self.row(i) for i in range(self.vertex_count)]

    def has_edge(self, i: int, j: int) -> bool:
        return i < j and j in self.successors[i]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Set bits in row-major order."""
        for i, row in enumerate(self.successors):
            for j in row:
                yield i, j

    def row_string(self, i: int) -> str:
        """Render R_i with column 0 leftmost, e.g. '0110'."""
        return bits_to_string(self.row(i), self.vertex_count)

    def column_string(self, j: int) -> str:
        return bits_to_string(self.column(j), self.vertex_count)


def _to_bits(indices: Iterable[int]) -> int:
    bits = 0
    for t in indices:
        bits |= 1 << t
    return bits


def bits_to_string(bits: int, width: int) -> str:
    return "".join("1" if bits >> t & 1 else "0" for t in range(width))
