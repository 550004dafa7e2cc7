"""Pytest configuration and shared fixtures for pimtc tests."""

from pathlib import Path
from unittest.mock import patch

import pytest

from pimtc.config import LOGGER
from pimtc.models.graph import Graph
from pimtc.models.simulation import CostConfig
from pimtc.services.graph_io import orient

# Four vertices, five edges, two triangles (0-1-2 and 1-2-3)
WORKED_EDGES = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@pytest.fixture
def mock_logger():
    """Mock logger to capture log messages."""
    with (
        patch.object(LOGGER, "info") as mock_info,
        patch.object(LOGGER, "error") as mock_error,
        patch.object(LOGGER, "warning") as mock_warning,
    ):
        yield {
            "info": mock_info,
            "error": mock_error,
            "warning": mock_warning,
        }


@pytest.fixture
def worked_graph():
    """The four-vertex, five-edge graph with two triangles."""
    return Graph.from_edges(4, WORKED_EDGES)


@pytest.fixture
def worked_adj(worked_graph):
    return orient(worked_graph)


@pytest.fixture
def k4_graph():
    return Graph.from_edges(4, K4_EDGES)


@pytest.fixture
def unit_costs():
    """Placeholder unit costs: write 1, compute 1, lookup 0."""
    return CostConfig.placeholder_costs()


@pytest.fixture
def edge_file(tmp_path):
    """Factory writing edge-list text to a file and returning its path."""

    def _write(text: str, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


@pytest.fixture
def worked_file(edge_file):
    return edge_file("\n".join(f"{u} {v}" for u, v in WORKED_EDGES) + "\n")
