import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cycle_graph, small_graphs
from src.rdf_core import (
    HostMismatchError,
    RdfError,
    RdfTriple,
    RomanFunction,
    complete_from_twos,
    differential_of_set,
    is_rdf,
    validate_triple,
)


def test_roman_function_rejects_bad_labels(c5):
    with pytest.raises(RdfError):
        RomanFunction(c5, (0, 1, 2))
    with pytest.raises(RdfError):
        RomanFunction(c5, (0, 1, 2, 3, 0))


def test_text_round_trip(c5):
    f = RomanFunction(c5, (2, 0, 1, 2, 0))
    assert f.to_text() == "2 0 1 2 0"
    assert RomanFunction.from_text(c5, f.to_text()) == f
    with pytest.raises(RdfError):
        RomanFunction.from_text(c5, "2 0 x 2 0")


def test_is_rdf_on_cycle(c5):
    assert is_rdf(c5, RomanFunction(c5, (2, 0, 1, 1, 0)))
    assert not is_rdf(c5, RomanFunction(c5, (2, 0, 0, 0, 0)))
    assert is_rdf(c5, RomanFunction(c5, (1,) * 5))


def test_is_rdf_checks_host(c5):
    f = RomanFunction(cycle_graph(6), (1,) * 6)
    with pytest.raises(HostMismatchError):
        is_rdf(c5, f)


def test_triple_requires_one_host(c5):
    ones = RomanFunction(c5, (1,) * 5)
    other = RomanFunction(cycle_graph(6), (1,) * 6)
    with pytest.raises(HostMismatchError):
        RdfTriple(ones, ones, other)


def test_validate_triple_reports_minimum(c5):
    f1 = RomanFunction(c5, (2, 0, 1, 1, 0))
    f2 = RomanFunction(c5, (0, 2, 0, 0, 2))
    f3 = RomanFunction(c5, (2, 0, 0, 0, 0))
    report = validate_triple(c5, RdfTriple(f1, f2, f3))
    assert report.valid == (True, True, False)
    assert not report.all_valid
    assert report.weights == (4, 4, 2)
    assert report.weight_total == 10
    assert report.min_index == 2
    assert report.strong_set == frozenset({0, 1, 4})


def test_min_index_breaks_ties_low(c5):
    f = RomanFunction(c5, (1,) * 5)
    assert validate_triple(c5, RdfTriple(f, f, f)).min_index == 0


def test_differential_of_set(star4):
    assert differential_of_set(star4, [0]) == 3
    assert differential_of_set(star4, []) == 0
    assert differential_of_set(star4, [1, 2]) == -1


def test_complete_from_twos(c5):
    f = complete_from_twos(c5, [0])
    assert f.values == (2, 0, 1, 1, 0)
    assert is_rdf(c5, f)


@given(small_graphs(max_n=8), st.data())
def test_completion_is_always_an_rdf(g, data):
    twos = data.draw(st.sets(st.integers(min_value=0, max_value=g.n - 1)))
    f = complete_from_twos(g, twos)
    assert is_rdf(g, f)
    assert f.twos == frozenset(twos)
