"""
Pytest configuration and fixtures for tdcsp tests.
"""

import os

import pytest

from tdcsp.core import BinCspInstance, ListColoringInstance, PrecoloringInstance
from tdcsp.structure import Graph

# Module-level config to ensure persistence
_test_config = None


def pytest_configure(config):
    """Configure pytest with test config at startup."""
    import tdcsp.config as cfg

    global _test_config

    test_dir = os.path.dirname(__file__)
    test_config_path = os.path.join(test_dir, "test_config.yaml")

    if os.path.exists(test_config_path):
        _test_config = cfg.load_config(test_config_path)


@pytest.fixture(autouse=True)
def ensure_test_config():
    """Ensure test configuration is active for each test."""
    import tdcsp.config as cfg

    if _test_config is not None:
        cfg._current_config = _test_config

    yield

    if _test_config is not None:
        cfg._current_config = _test_config


@pytest.fixture
def caps():
    """Caps of the test configuration."""
    import tdcsp.config as cfg

    return cfg.get_caps()


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def neq_instance(graph: Graph, size: int) -> BinCspInstance:
    """Graph coloring with ``size`` colors as a Binary CSP."""
    pairs = frozenset((a, b) for a in range(size) for b in range(size) if a != b)
    return BinCspInstance.build(
        [tuple(range(size))] * graph.n, {e: pairs for e in graph.edges}
    )


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path5():
    return path_graph(5)


@pytest.fixture
def triangle_2col(triangle):
    """Unsatisfiable: a triangle with two colors."""
    return neq_instance(triangle, 2)


@pytest.fixture
def triangle_3col(triangle):
    return neq_instance(triangle, 3)


@pytest.fixture
def path_listcoloring(path5):
    lists = {0: (0,), 1: (0, 1), 2: (1, 2), 3: (0, 2), 4: (2,)}
    return ListColoringInstance(path5, (0, 1, 2), lists)


@pytest.fixture
def star_precoloring():
    """Center 0 uncolored, leaves precolored 0, 1 and 2 with three colors."""
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    return PrecoloringInstance(star, (0, 1, 2), {1: 0, 2: 1, 3: 2})
