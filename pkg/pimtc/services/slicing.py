"""Sparsity-aware slice compression of the oriented adjacency matrix."""

import struct
from collections.abc import Sequence
from pathlib import Path

from pimtc.config import LOGGER
from pimtc.errors import ConfigError
from pimtc.models.graph import OrientedAdjacency
from pimtc.models.slicing import CompressedGraph, CompressionMetrics, Slice, SliceConfig
from pimtc.utils import iter_set_bits

_HEADER = struct.Struct("<QQII")
_COUNT = struct.Struct("<I")


def compress(adj: OrientedAdjacency, cfg: SliceConfig) -> CompressedGraph:
    """Keep only the slices that hold at least one set bit, per row and column."""
    cfg.validate_for(adj.vertex_count)
    row_slices = _slice_vectors(adj.successors, cfg.slice_length)
    col_slices = _slice_vectors(adj.predecessors, cfg.slice_length)
    cg = CompressedGraph(
        config=cfg,
        vertex_count=adj.vertex_count,
        edge_count=adj.edge_count,
        row_slices=row_slices,
        col_slices=col_slices,
    )
    LOGGER.debug(
        f"Compressed |V|={adj.vertex_count} at |S|={cfg.slice_length}: "
        f"{cg.row_valid_slice_count} row / {cg.col_valid_slice_count} column slices"
    )
    return cg


def _slice_vectors(
    vectors: Sequence[Sequence[int]], slice_length: int
) -> tuple[tuple[Slice, ...], ...]:
    sliced = []
    for positions in vectors:
        # positions ascend, so ordinals are inserted in ascending order
        payloads: dict[int, int] = {}
        for t in positions:
            k, offset = divmod(t, slice_length)
            payloads[k] = payloads.get(k, 0) | (1 << offset)
        sliced.append(tuple(Slice(k, payload) for k, payload in payloads.items()))
    return tuple(sliced)


def decompress(cg: CompressedGraph) -> OrientedAdjacency:
    """Rebuild the oriented adjacency from the row-side slices."""
    successors = tuple(tuple(cg.row_edges(i)) for i in range(cg.vertex_count))
    predecessors: list[list[int]] = [[] for _ in range(cg.vertex_count)]
    for i, row in enumerate(successors):
        for j in row:
            predecessors[j].append(i)
    return OrientedAdjacency(
        vertex_count=cg.vertex_count,
        successors=successors,
        predecessors=tuple(tuple(col) for col in predecessors),
    )


def valid_slice_pairs(
    cg: CompressedGraph, i: int, j: int
) -> list[tuple[Slice, Slice]]:
    """Row-i and column-j slices that are both valid at the same ordinal."""
    row, col = cg.row_slices[i], cg.col_slices[j]
    pairs = []
    x = y = 0
    while x < len(row) and y < len(col):
        if row[x].index == col[y].index:
            pairs.append((row[x], col[y]))
            x += 1
            y += 1
        elif row[x].index < col[y].index:
            x += 1
        else:
            y += 1
    return pairs


def analytic_compression_rate(alpha: float, cfg: SliceConfig) -> float:
    """CR = (1 + |D|/|S|) * (1 - alpha^|S|)."""
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"sparsity must lie in [0, 1], got {alpha}")
    overhead = 1.0 + cfg.index_width / cfg.slice_length
    return overhead * (1.0 - alpha**cfg.slice_length)


def expected_valid_slices(alpha: float, vertex_count: int, cfg: SliceConfig) -> float:
    """(1 - alpha^|S|) * ceil(|V|/|S|) * |V| valid slices expected per side."""
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"sparsity must lie in [0, 1], got {alpha}")
    return (
        (1.0 - alpha**cfg.slice_length)
        * cfg.slices_per_vector(vertex_count)
        * vertex_count
    )


def compressed_size_bytes(cg: CompressedGraph) -> float:
    """N_VS * (|D| + |S|) / 8, counting the row-side store."""
    bits = cg.config.index_width + cg.config.slice_length
    return cg.row_valid_slice_count * bits / 8


def ordinary_size_bytes(vertex_count: int) -> float:
    """Dense |V| x |V| bit-matrix, |V|^2 / 8 bytes."""
    return vertex_count**2 / 8


def count_valid_pairs(cg: CompressedGraph) -> int:
    """Sum over oriented edges of the number of valid slice pairs."""
    col_ordinals = [{piece.index for piece in col} for col in cg.col_slices]
    total = 0
    for i, row in enumerate(cg.row_slices):
        if not row:
            continue
        row_ordinals = {piece.index for piece in row}
        for j in cg.row_edges(i):
            total += len(row_ordinals & col_ordinals[j])
    return total


def measured_metrics(cg: CompressedGraph) -> CompressionMetrics:
    """Measured CR and valid-pair ratio next to their analytic counterparts."""
    cfg = cg.config
    n, m = cg.vertex_count, cg.edge_count
    alpha = 1.0 - m / n**2 if n else 1.0

    ordinary = ordinary_size_bytes(n)
    compressed = compressed_size_bytes(cg)
    pair_count = count_valid_pairs(cg)
    pair_slots = m * cfg.slices_per_vector(n)

    return CompressionMetrics(
        slice_length=cfg.slice_length,
        index_width=cfg.index_width,
        alpha=alpha,
        analytic_cr=analytic_compression_rate(alpha, cfg),
        measured_cr=compressed / ordinary if ordinary else 0.0,
        valid_slice_count=cg.row_valid_slice_count,
        column_valid_slice_count=cg.col_valid_slice_count,
        expected_valid_slice_count=expected_valid_slices(alpha, n, cfg),
        valid_pair_count=pair_count,
        valid_pair_ratio=pair_count / pair_slots if pair_slots else 0.0,
        compressed_bytes=compressed,
        ordinary_bytes=ordinary,
    )


def _check_byte_aligned(cfg: SliceConfig) -> None:
    if cfg.slice_length % 8:
        raise ConfigError(
            f"on-disk slices need |S| to be a multiple of 8, got {cfg.slice_length}"
        )


def write_compressed(cg: CompressedGraph, path: str | Path) -> None:
    """
    Little-endian layout: header (|V|, |E| as u64; |S|, |D| as u32), then per
    row a u32 slice count followed by (ordinal, payload) records. Ordinals take
    ceil(|D|/8) bytes; payloads take |S|/8 bytes, LSB-first.
    """
    cfg = cg.config
    _check_byte_aligned(cfg)
    index_bytes = -(-cfg.index_width // 8)
    payload_bytes = cfg.slice_length // 8

    with open(path, "wb") as f:
        f.write(
            _HEADER.pack(
                cg.vertex_count, cg.edge_count, cfg.slice_length, cfg.index_width
            )
        )
        for row in cg.row_slices:
            f.write(_COUNT.pack(len(row)))
            for piece in row:
                f.write(piece.index.to_bytes(index_bytes, "little"))
                f.write(piece.payload.to_bytes(payload_bytes, "little"))


def read_compressed(path: str | Path) -> CompressedGraph:
    """Load the on-disk format; the column side is rebuilt from the rows."""
    with open(path, "rb") as f:
        data = f.read()

    try:
        n, m, slice_length, index_width = _HEADER.unpack_from(data, 0)
        cfg = SliceConfig(slice_length=slice_length, index_width=index_width)
        _check_byte_aligned(cfg)
        index_bytes = -(-index_width // 8)
        payload_bytes = slice_length // 8

        offset = _HEADER.size
        rows = []
        for _ in range(n):
            (count,) = _COUNT.unpack_from(data, offset)
            offset += _COUNT.size
            row = []
            for _ in range(count):
                index = int.from_bytes(data[offset : offset + index_bytes], "little")
                offset += index_bytes
                payload = int.from_bytes(
                    data[offset : offset + payload_bytes], "little"
                )
                offset += payload_bytes
                row.append(Slice(index, payload))
            rows.append(tuple(row))
    except struct.error as e:
        raise ConfigError(f"truncated compressed graph file '{path}': {e}") from e
    if offset != len(data):
        raise ConfigError(f"compressed graph file '{path}' has a bad length")
    _check_rows(rows, n, slice_length, path)

    shell = CompressedGraph(
        config=cfg,
        vertex_count=n,
        edge_count=m,
        row_slices=tuple(rows),
        col_slices=(),
    )
    adj = decompress(shell)
    if adj.edge_count != m:
        raise ConfigError(
            f"compressed graph file '{path}' declares {m} edges "
            f"but stores {adj.edge_count}"
        )
    return compress(adj, cfg)


def _check_rows(
    rows: Sequence[Sequence[Slice]], n: int, slice_length: int, path: str | Path
) -> None:
    """Rows must be strictly upper-triangular with ascending non-empty slices."""
    for i, row in enumerate(rows):
        previous = -1
        for piece in row:
            if piece.index <= previous or not piece.payload:
                raise ConfigError(
                    f"compressed graph file '{path}' row {i} has an empty or "
                    f"out-of-order slice at ordinal {piece.index}"
                )
            previous = piece.index
            base = piece.index * slice_length
            for t in iter_set_bits(piece.payload):
                if not i < base + t < n:
                    raise ConfigError(
                        f"compressed graph file '{path}' row {i} stores column "
                        f"{base + t} outside ({i}, {n})"
                    )
