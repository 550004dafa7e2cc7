"""Loading, normalizing and orienting graphs from SNAP edge-list files."""

from pathlib import Path

import numpy as np

from pimtc.config import LOGGER
from pimtc.errors import ConfigError, UndefinedInputError
from pimtc.models.graph import Graph, OrientedAdjacency
from pimtc.utils import parse_edge_list, read_edge_list_from_file


def load_edge_list(path: str | Path) -> Graph:
    """
    Load an undirected graph from a SNAP edge list.

    Original ids are remapped to a dense [0, |V|) range preserving their
    relative order, so files that are already dense keep their numbering.
    Self-loops and repeated edges (in either direction) are dropped and
    counted. Vertices that only ever appear in a self-loop are not kept.
    """
    pairs = parse_edge_list(read_edge_list_from_file(path))

    self_loops = 0
    unique: set[tuple[int, int]] = set()
    for u, v in pairs:
        if u == v:
            self_loops += 1
            continue
        unique.add((min(u, v), max(u, v)))
    duplicates = len(pairs) - self_loops - len(unique)

    original_ids = sorted({vertex for edge in unique for vertex in edge})
    dense = {original: index for index, original in enumerate(original_ids)}
    edges = frozenset((dense[u], dense[v]) for u, v in unique)

    graph = Graph(
        vertex_count=len(original_ids),
        edges=edges,
        original_ids=tuple(original_ids),
        dropped_self_loops=self_loops,
        dropped_duplicates=duplicates,
    )
    LOGGER.debug(
        f"Loaded {path}: |V|={graph.vertex_count}, |E|={graph.edge_count}, "
        f"dropped {self_loops} self-loops and {duplicates} duplicate records"
    )
    return graph


def write_edge_list(graph: Graph, path: str | Path) -> None:
    """Serialize a graph as a SNAP edge list using its dense ids."""
    with open(path, "w") as f:
        f.write("# Undirected graph written by pimtc\n")
        f.write(f"# Nodes: {graph.vertex_count} Edges: {graph.edge_count}\n")
        f.write("# FromNodeId\tToNodeId\n")
        for u, v in graph.sorted_edges():
            f.write(f"{u}\t{v}\n")


def orient(graph: Graph) -> OrientedAdjacency:
    """Keep each undirected edge once, at (min, max)."""
    successors: list[list[int]] = [[] for _ in range(graph.vertex_count)]
    predecessors: list[list[int]] = [[] for _ in range(graph.vertex_count)]
    for u, v in graph.sorted_edges():
        successors[u].append(v)
        predecessors[v].append(u)

    return OrientedAdjacency(
        vertex_count=graph.vertex_count,
        successors=tuple(tuple(row) for row in successors),
        predecessors=tuple(tuple(col) for col in predecessors),
    )


def sparsity(graph: Graph) -> float:
    """alpha = 1 - |E| / |V|^2, the chance that an adjacency cell is zero."""
    if graph.vertex_count == 0:
        raise UndefinedInputError(
            "sparsity is undefined for a graph with no vertices"
        )
    return 1.0 - graph.edge_count / graph.vertex_count**2


def random_graph(vertex_count: int, probability: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi G(n, p)."""
    if vertex_count < 0:
        raise ConfigError(f"vertex count must be non-negative, got {vertex_count}")
    if not 0.0 <= probability <= 1.0:
        raise ConfigError(f"edge probability must lie in [0, 1], got {probability}")

    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((vertex_count, vertex_count)) < probability, k=1)
    sources, targets = np.nonzero(upper)
    return Graph(
        vertex_count=vertex_count,
        edges=frozenset(zip(sources.tolist(), targets.tolist(), strict=True)),
    )
