"""
Exact triangle counting.

The bitwise engine sums BitCount(AND(R_i, C_j)) over every set bit A[i][j]
of the upper-triangular adjacency matrix. With i < j, a common set bit k
satisfies i < k < j, so each triangle is counted once at its middle vertex.
The oracle and trace engines share no code with it.
"""

import numpy as np

from pimtc.config import TRACE_ORACLE_MAX_VERTICES
from pimtc.errors import CapacityError
from pimtc.models.graph import Graph, OrientedAdjacency
from pimtc.utils import bitcount


def count_triangles_bitwise(
    adj: OrientedAdjacency, precompute_columns: bool = True
) -> int:
    """
    Triangle count via AND + BitCount over oriented edges.

    A^2 is never materialized. With precompute_columns the transposed
    bit-matrix is built once; otherwise each C_j is rebuilt per use.
    """
    columns: dict[int, int] = {}
    if precompute_columns:
        columns = {
            j: adj.column(j)
            for j in range(adj.vertex_count)
            if adj.predecessors[j]
        }

    total = 0
    for i, successors in enumerate(adj.successors):
        if not successors:
            continue
        row = adj.row(i)
        for j in successors:
            column = columns[j] if precompute_columns else adj.column(j)
            total += bitcount(row & column)
    return total


def edge_contribution(adj: OrientedAdjacency, i: int, j: int) -> int:
    """BitCount(AND(R_i, C_j)) for one oriented edge."""
    return bitcount(adj.row(i) & adj.column(j))


def count_triangles_oracle(graph: Graph) -> int:
    """Common-neighbor intersection over every edge; each triangle is seen 3x."""
    neighbors = [sorted(nbrs) for nbrs in graph.neighbor_sets()]
    total = 0
    for u, v in graph.edges:
        total += _sorted_intersection_size(neighbors[u], neighbors[v])
    return total // 3


def _sorted_intersection_size(a: list[int], b: list[int]) -> int:
    count = 0
    x = y = 0
    while x < len(a) and y < len(b):
        if a[x] == b[y]:
            count += 1
            x += 1
            y += 1
        elif a[x] < b[y]:
            x += 1
        else:
            y += 1
    return count


def count_triangles_trace(graph: Graph) -> int:
    """trace(A^3) / 6 over the full symmetric 0/1 adjacency matrix."""
    n = graph.vertex_count
    if n > TRACE_ORACLE_MAX_VERTICES:
        raise CapacityError("trace oracle", n, TRACE_ORACLE_MAX_VERTICES)
    if n == 0:
        return 0

    # float64 products are exact here: entries of A^2 never exceed n
    a = np.zeros((n, n), dtype=np.float64)
    if graph.edges:
        sources, targets = np.array(sorted(graph.edges)).T
        a[sources, targets] = 1.0
        a[targets, sources] = 1.0
    # trace(A^3) = sum over (i, j) of (A^2)[i][j] * A[j][i]
    trace = float(np.sum((a @ a) * a.T))
    return round(trace) // 6
