import networkx as nx
import pytest
from hypothesis import given

from conftest import cycle_graph, path_graph, small_graphs
from src.graph_core import (
    DisconnectedError,
    EdgeListParseError,
    GraphError,
    NoPathError,
    SelfLoopError,
    VertexCycle,
    VertexOutOfRangeError,
    VertexPath,
    build_graph,
    closed_neighborhood,
    induced_cycles_up_to,
    longest_path,
    parse_edge_list,
    read_edge_list,
    shortest_connecting_path,
)


def test_build_graph_normalizes_and_dedupes(caplog):
    g = build_graph(3, [(1, 0), (0, 1), (2, 1)])
    assert g.m == 2
    assert g.sorted_edges() == [(0, 1), (1, 2)]
    assert g.neighbors(1) == (0, 2)
    assert "duplicate" in caplog.text


def test_build_graph_rejects_bad_edges():
    with pytest.raises(SelfLoopError):
        build_graph(3, [(1, 1)])
    with pytest.raises(VertexOutOfRangeError):
        build_graph(3, [(0, 3)])


def test_neighbors_out_of_range():
    with pytest.raises(VertexOutOfRangeError):
        cycle_graph(4).neighbors(4)


def test_parse_edge_list_round_trip():
    text = "# a triangle\n3 3\n0 1\n1 2\n\n2 0\n"
    g = parse_edge_list(text)
    assert g.n == 3 and g.m == 3
    assert parse_edge_list(g.to_edge_list()) == g


@pytest.mark.parametrize("text, line", [
    ("3 1\n0 x\n", 2),
    ("3 1\n0 1 2\n", 2),
    ("3 1\n0 0\n", 2),
    ("3 1\n0 5\n", 2),
    ("3 2\n0 1\n", 1),
    ("", 1),
])
def test_parse_edge_list_errors_carry_line(text, line):
    with pytest.raises(EdgeListParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_read_edge_list(tmp_path):
    path = tmp_path / "c4.edges"
    path.write_text(cycle_graph(4).to_edge_list())
    assert read_edge_list(path) == cycle_graph(4)
    with pytest.raises(FileNotFoundError):
        read_edge_list(tmp_path / "missing.edges")


def test_induced_subgraph_renumbers():
    g = cycle_graph(6)
    sub, id_map = g.induced_subgraph([5, 0, 1])
    assert id_map == [0, 1, 5]
    assert sub.sorted_edges() == [(0, 1), (0, 2)]


def test_edge_subgraph_rejects_non_edges():
    g = cycle_graph(5)
    with pytest.raises(GraphError):
        g.edge_subgraph([0, 2], [(0, 2)])


def test_components_sorted():
    g = build_graph(5, [(3, 4), (0, 2)])
    assert g.components() == [[0, 2], [1], [3, 4]]
    assert not g.is_connected()


def test_closed_neighborhood():
    assert closed_neighborhood(cycle_graph(6), [0]) == frozenset({5, 0, 1})


def test_vertex_cycle_validation_and_rotation():
    with pytest.raises(GraphError):
        VertexCycle((0, 1))
    with pytest.raises(GraphError):
        VertexCycle((0, 1, 1))
    cycle = VertexCycle((3, 1, 0, 2))
    assert cycle.canonical().vertices == (0, 1, 3, 2)
    assert cycle.starting_at(0) == (0, 2, 3, 1)
    assert cycle.starting_at(0, toward=1) == (0, 1, 3, 2)
    assert cycle.residue == 1


def test_vertex_path_helpers():
    path = VertexPath((4, 5, 6))
    assert path.first == 4 and path.last == 6
    assert path.interior == (5,)
    assert path.reversed().vertices == (6, 5, 4)
    assert path.is_valid_in(path_graph(6)) is False
    assert VertexPath((0, 1, 2)).is_valid_in(path_graph(3))


def test_petersen_has_twelve_induced_five_cycles(petersen):
    five = [c for c in induced_cycles_up_to(petersen, 5) if len(c) == 5]
    assert len(five) == 12
    assert all(c.is_induced_in(petersen) for c in five)


def test_induced_cycles_skip_chorded():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    cycles = induced_cycles_up_to(g, 4)
    assert [len(c) for c in cycles] == [3, 3]


def test_longest_path_cycle_and_disconnected():
    assert longest_path(cycle_graph(7)).vertices == tuple(range(7))
    with pytest.raises(DisconnectedError):
        longest_path(build_graph(3, [(0, 1)]))


def test_longest_path_prefers_smallest_sequence():
    # two 4-cycles joined by the edge 0-4
    g = build_graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4)])
    assert longest_path(g).vertices == (1, 2, 3, 0, 4, 5, 6, 7)


@given(small_graphs(min_n=2, max_n=6, connected=True))
def test_longest_path_matches_networkx_length(g):
    path = longest_path(g)
    assert path.is_valid_in(g)
    graph = g.to_networkx()
    best = max(
        len(p)
        for s in graph.nodes for t in graph.nodes if s != t
        for p in nx.all_simple_paths(graph, s, t)
    )
    assert len(path) == best


def test_shortest_connecting_path_avoids_sets():
    g = cycle_graph(8)
    path = shortest_connecting_path(g, [0], [4], avoid=[1])
    assert path.vertices == (0, 7, 6, 5, 4)
    with pytest.raises(NoPathError):
        shortest_connecting_path(g, [0], [4], avoid=[1, 7])
    with pytest.raises(ValueError):
        shortest_connecting_path(g, [0], [0, 4])


def test_shortest_connecting_path_tie_breaks_on_endpoints():
    g = cycle_graph(6)
    path = shortest_connecting_path(g, [0, 3], [1, 4])
    assert path.vertices == (0, 1)
