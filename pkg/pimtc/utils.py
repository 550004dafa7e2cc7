"""Utility functions for pimtc."""

import hashlib
import json
from collections.abc import Iterable, Iterator
from pathlib import Path

from .errors import EdgeListParseError, EdgeListReadError


def read_edge_list_from_file(path: str | Path) -> list[str]:
    """Read the raw lines of an edge-list file."""
    try:
        with open(path) as f:
            return f.readlines()
    except (OSError, UnicodeDecodeError) as e:
        raise EdgeListReadError(str(path), str(e)) from e


def parse_edge_list(lines: Iterable[str]) -> list[tuple[int, int]]:
    """
    Parses SNAP edge-list lines into (source, target) pairs of original ids.

    Lines starting with '#' and blank lines are skipped. Tab and space
    separators are both accepted; tokens after the second are ignored.
    """
    line_errors: list[tuple[int, str]] = []
    pairs: list[tuple[int, int]] = []
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        tokens = line.split()
        if len(tokens) < 2:
            line_errors.append((number, line))
            continue

        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            line_errors.append((number, line))
            continue

        if u < 0 or v < 0:
            line_errors.append((number, line))
            continue

        pairs.append((u, v))

    if line_errors:
        raise EdgeListParseError(line_errors)
    return pairs


def bitcount(bits: int) -> int:
    """Number of '1's in a bit-vector."""
    return bits.bit_count()


def iter_set_bits(bits: int) -> Iterator[int]:
    """Positions of the set bits, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def canonical_json(data: object) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def config_hash(config: object) -> str:
    """sha256 of the canonical JSON form of a config echo."""
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()
