import os

import hypothesis
import networkx as nx
import pytest
from hypothesis import strategies as st

from src.graph_core import Graph, build_graph, from_networkx

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a Hamiltonian path added so the result is connected"""
    g = nx.gnp_random_graph(n, p, seed=seed)
    g.add_edges_from((i, i + 1) for i in range(n - 1))
    graph, _ = from_networkx(g)
    return graph


@st.composite
def small_graphs(draw, min_n: int = 1, max_n: int = 9, connected: bool = False) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = list(edges)
    if connected:
        # a random spanning tree keeps the draw connected
        edges += [(draw(st.integers(min_value=0, max_value=v - 1)), v) for v in range(1, n)]
    return build_graph(n, edges, warn_duplicates=False)


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def c17() -> Graph:
    return cycle_graph(17)


@pytest.fixture
def petersen() -> Graph:
    g, _ = from_networkx(nx.petersen_graph())
    return g


@pytest.fixture
def star4() -> Graph:
    return build_graph(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def two_c5_bridged() -> Graph:
    """C5 on 0..4 and C5 on 5..9 joined by the edge 0-5"""
    return build_graph(10, [(i, (i + 1) % 5) for i in range(5)]
                       + [(5 + i, 5 + (i + 1) % 5) for i in range(5)] + [(0, 5)])
