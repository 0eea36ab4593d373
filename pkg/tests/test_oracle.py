import itertools

import pytest
from hypothesis import given

from conftest import cycle_graph, path_graph, random_connected_graph, small_graphs
from src.graph_core import build_graph
from src.oracle import (
    BadOrderError,
    IsolatedVertexError,
    TooLargeError,
    check_gallai,
    closed_form,
    differential_exact,
    gamma_r_exact,
)
from src.rdf_core import differential_of_set, is_rdf


@pytest.mark.parametrize("g, gamma, differential", [
    (cycle_graph(5), 4, 1),
    (cycle_graph(17), 12, 5),
    (build_graph(5, [(0, i) for i in range(1, 5)]), 2, 3),
    (path_graph(2), 2, 0),
])
def test_known_values(g, gamma, differential):
    exact = gamma_r_exact(g)
    assert exact.value == gamma
    assert exact.witness.weight == gamma
    assert is_rdf(g, exact.witness)
    diff = differential_exact(g)
    assert diff.value == differential
    assert differential_of_set(g, diff.witness) == differential


def test_witness_is_lexicographically_smallest():
    # smallest of all weight-4 labellings, not only the single-2 ones
    assert gamma_r_exact(cycle_graph(5)).witness.values == (0, 0, 2, 0, 2)


def test_limit_is_enforced():
    with pytest.raises(TooLargeError):
        gamma_r_exact(cycle_graph(8), limit=7)
    with pytest.raises(TooLargeError):
        differential_exact(cycle_graph(8), limit=7)


def test_empty_graph():
    empty = build_graph(0, [])
    assert gamma_r_exact(empty).value == 0
    assert differential_exact(empty).value == 0


def orders(low, high, fast_up_to=11):
    return [n if n <= fast_up_to else pytest.param(n, marks=pytest.mark.slow) for n in range(low, high + 1)]


@pytest.mark.parametrize("n", orders(3, 20))
def test_closed_form_matches_cycles(n):
    assert closed_form("cycle", n) == gamma_r_exact(cycle_graph(n)).value


@pytest.mark.parametrize("n", orders(1, 20))
def test_closed_form_matches_paths(n):
    assert closed_form("path", n) == gamma_r_exact(path_graph(n)).value


def test_closed_form_domain():
    assert closed_form("path", 1) == 1
    with pytest.raises(BadOrderError):
        closed_form("cycle", 2)
    with pytest.raises(BadOrderError):
        closed_form("path", 0)
    with pytest.raises(ValueError):
        closed_form("wheel", 5)


def test_gallai_rejects_isolated_vertices():
    with pytest.raises(IsolatedVertexError):
        check_gallai(build_graph(3, [(0, 1)]))


@given(small_graphs(min_n=2, max_n=8, connected=True))
def test_gallai_identity(g):
    assert check_gallai(g)


@given(small_graphs(max_n=7))
def test_gamma_r_against_brute_force(g):
    best = min(
        sum(labels)
        for labels in itertools.product((0, 1, 2), repeat=g.n)
        if all(labels[v] != 0 or any(labels[w] == 2 for w in g.adjacency[v]) for v in g.vertices())
    )
    assert gamma_r_exact(g).value == best


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_gallai_identity_on_random_graphs(seed):
    g = random_connected_graph(2 + seed % 13, 0.3, seed)
    assert g.is_connected()
    assert check_gallai(g)
