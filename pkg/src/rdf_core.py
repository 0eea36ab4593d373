import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Sequence, Tuple

from src.graph_core import Graph, closed_neighborhood

logger = logging.getLogger("rdf_core")


class RdfError(Exception):
    """Base exception for Roman function errors"""
    pass


class HostMismatchError(RdfError):
    """Raised when a function is checked against a graph it was not built for"""
    pass


@dataclass(frozen=True)
class RomanFunction:
    """A labelling V -> {0, 1, 2} of a fixed host graph"""
    host: Graph
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.host.n:
            raise RdfError(f"expected {self.host.n} labels, got {len(self.values)}")
        if any(value not in (0, 1, 2) for value in self.values):
            raise RdfError("labels must be 0, 1 or 2")

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    @property
    def weight(self) -> int:
        return sum(self.values)

    @property
    def twos(self) -> FrozenSet[int]:
        return frozenset(v for v, value in enumerate(self.values) if value == 2)

    def restrict(self, vertices: Sequence[int]) -> Tuple[int, ...]:
        """Labels of ``vertices`` in the given order, e.g. a subgraph's id map"""
        return tuple(self.values[v] for v in vertices)

    def to_text(self) -> str:
        return " ".join(str(value) for value in self.values)

    @classmethod
    def from_text(cls, host: Graph, text: str) -> "RomanFunction":
        try:
            values = tuple(int(token) for token in text.split())
        except ValueError:
            raise RdfError(f"labels must be integers: {text!r}")
        return cls(host, values)


@dataclass(frozen=True)
class RdfTriple:
    f1: RomanFunction
    f2: RomanFunction
    f3: RomanFunction

    def __post_init__(self):
        if not (self.f1.host == self.f2.host == self.f3.host):
            raise HostMismatchError("all three functions must share one host graph")

    def __iter__(self) -> Iterator[RomanFunction]:
        return iter((self.f1, self.f2, self.f3))

    @property
    def components(self) -> Tuple[RomanFunction, RomanFunction, RomanFunction]:
        return (self.f1, self.f2, self.f3)

    @property
    def host(self) -> Graph:
        return self.f1.host

    @property
    def weight(self) -> int:
        return self.f1.weight + self.f2.weight + self.f3.weight

    @property
    def strong_set(self) -> FrozenSet[int]:
        return self.f1.twos | self.f2.twos | self.f3.twos

    def to_text(self) -> str:
        return "\n".join(f.to_text() for f in self)


@dataclass(frozen=True)
class TripleReport:
    valid: Tuple[bool, bool, bool]
    weights: Tuple[int, int, int]
    weight_total: int
    strong_set: FrozenSet[int]
    min_index: int

    @property
    def all_valid(self) -> bool:
        return all(self.valid)


def _check_host(g: Graph, f: RomanFunction) -> None:
    if f.host != g:
        raise HostMismatchError(f"function was built for a graph with n={f.host.n}, m={f.host.m}")


def is_rdf(g: Graph, f: RomanFunction) -> bool:
    """Every 0-labelled vertex needs a neighbour labelled 2"""
    _check_host(g, f)
    return all(
        any(f.values[w] == 2 for w in g.adjacency[v])
        for v, value in enumerate(f.values)
        if value == 0
    )


def validate_triple(g: Graph, T: RdfTriple) -> TripleReport:
    for f in T:
        _check_host(g, f)
    weights = tuple(f.weight for f in T)
    report = TripleReport(
        valid=tuple(is_rdf(g, f) for f in T),
        weights=weights,
        weight_total=sum(weights),
        strong_set=T.strong_set,
        min_index=min(range(3), key=lambda j: (weights[j], j)),
    )
    logger.debug(f"Triple weights {report.weights}, valid {report.valid}")
    return report


def differential_of_set(g: Graph, D: Iterable[int]) -> int:
    """|B(D)| - |D| where B(D) are the outside vertices with a neighbour in D"""
    members = frozenset(D)
    g.check_vertices(members)
    boundary = closed_neighborhood(g, members) - members
    return len(boundary) - len(members)


def complete_from_twos(g: Graph, twos: Iterable[int]) -> RomanFunction:
    """RDF with 2 on ``twos``, 1 on the vertices they leave undominated, 0 elsewhere"""
    heavy = frozenset(twos)
    g.check_vertices(heavy)
    dominated = closed_neighborhood(g, heavy)
    values = tuple(2 if v in heavy else (0 if v in dominated else 1) for v in g.vertices())
    return RomanFunction(g, values)
