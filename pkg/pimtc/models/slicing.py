from dataclasses import asdict, dataclass

from pimtc.config import DEFAULT_INDEX_WIDTH, DEFAULT_SLICE_LENGTH
from pimtc.errors import ConfigError
from pimtc.utils import iter_set_bits


@dataclass(frozen=True)
class SliceConfig:
    """Slice geometry: |S| payload bits and |D| index bits per stored slice."""

    slice_length: int = DEFAULT_SLICE_LENGTH
    index_width: int = DEFAULT_INDEX_WIDTH

    def __post_init__(self) -> None:
        if self.slice_length <= 0:
            raise ConfigError(
                f"slice length must be positive, got {self.slice_length}"
            )
        if self.index_width <= 0:
            raise ConfigError(f"index width must be positive, got {self.index_width}")

    def slices_per_vector(self, vertex_count: int) -> int:
        """ceil(|V| / |S|)."""
        return -(-vertex_count // self.slice_length)

    def required_index_width(self, vertex_count: int) -> int:
        """ceil(log2(ceil(|V| / |S|))) bits, zero when there is a single slice."""
        return max(self.slices_per_vector(vertex_count) - 1, 0).bit_length()

    def validate_for(self, vertex_count: int) -> None:
        required = self.required_index_width(vertex_count)
        if self.index_width < required:
            raise ConfigError(
                f"index width {self.index_width} cannot address "
                f"{self.slices_per_vector(vertex_count)} slices "
                f"(needs at least {required} bits)"
            )

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass(frozen=True, slots=True)
class Slice:
    """
    A valid |S|-bit segment of a row or column.
    Bit t of payload is matrix position index * |S| + t.
    """

    index: int
    payload: int


@dataclass(frozen=True)
class CompressedGraph:
    """Per-row and per-column lists of valid slices, ordered by index."""

    config: SliceConfig
    vertex_count: int
    edge_count: int
    row_slices: tuple[tuple[Slice, ...], ...]
    col_slices: tuple[tuple[Slice, ...], ...]

    @property
    def row_valid_slice_count(self) -> int:
        """N_VS counted on the row side."""
        return sum(len(slices) for slices in self.row_slices)

    @property
    def col_valid_slice_count(self) -> int:
        return sum(len(slices) for slices in self.col_slices)

    def row_edges(self, i: int) -> list[int]:
        """Set columns of row i, ascending."""
        s = self.config.slice_length
        return [
            piece.index * s + t
            for piece in self.row_slices[i]
            for t in iter_set_bits(piece.payload)
        ]


@dataclass(frozen=True)
class CompressionMetrics:
    """
    Analytic and measured compression figures for one slice configuration.

    measured_cr is at most 1 + |D|/|S| when |S| divides |V|. Otherwise the
    zero-padded last slice of each vector lifts the ceiling to
    (1 + |D|/|S|) * |S| * ceil(|V|/|S|) / |V|.
    """

    slice_length: int
    index_width: int
    alpha: float
    analytic_cr: float
    measured_cr: float
    valid_slice_count: int
    column_valid_slice_count: int
    expected_valid_slice_count: float
    valid_pair_count: int
    valid_pair_ratio: float
    compressed_bytes: float
    ordinary_bytes: float

    def to_dict(self) -> dict[str, float | int]:
        return asdict(self)
