"""Immutable simple graphs plus the path and cycle searches used by every construction.

Vertices are dense ids ``0..n-1``. Anything that builds a graph on a subset of
vertices returns the id map alongside it so labels can be lifted back.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

logger = logging.getLogger("graph_core")

Edge = Tuple[int, int]


class GraphError(Exception):
    """Base exception for graph construction and search errors"""
    pass


class SelfLoopError(GraphError):
    """Raised when an edge joins a vertex to itself"""
    pass


class VertexOutOfRangeError(GraphError):
    """Raised when a vertex id is not in 0..n-1"""
    pass


class DisconnectedError(GraphError):
    """Raised when an operation needs a connected graph"""
    pass


class NoPathError(GraphError):
    """Raised when two vertex sets lie in different components"""
    pass


class EdgeListParseError(GraphError):
    """Raised for malformed edge-list text; carries the 1-based line number"""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _normalize(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[Tuple[int, ...], ...] = field(compare=False, repr=False)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize(u, v) in self.edges

    def min_degree(self) -> int:
        return min((len(adj) for adj in self.adjacency), default=0)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise VertexOutOfRangeError(f"vertex {v} not in 0..{self.n - 1}")

    def check_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            self._check_vertex(v)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return nx.is_connected(self.to_networkx())

    def components(self) -> List[List[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex"""
        parts = [sorted(c) for c in nx.connected_components(self.to_networkx())]
        return sorted(parts, key=lambda part: part[0])

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", List[int]]:
        """Induced subgraph with vertices renumbered in increasing order.

        Returns the subgraph and the map from new ids to ids of ``self``.
        """
        kept = sorted(set(vertices))
        self.check_vertices(kept)
        index = {old: new for new, old in enumerate(kept)}
        sub_edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return build_graph(len(kept), sub_edges), kept

    def edge_subgraph(self, vertices: Iterable[int], edges: Iterable[Edge]) -> Tuple["Graph", List[int]]:
        """Subgraph on ``vertices`` keeping only the listed host edges"""
        kept = sorted(set(vertices))
        index = {old: new for new, old in enumerate(kept)}
        sub_edges = []
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"({u}, {v}) is not an edge of the host graph")
            sub_edges.append((index[u], index[v]))
        return build_graph(len(kept), sub_edges), kept

    def extend(self, count: int, new_edges: Iterable[Edge]) -> "Graph":
        """Append ``count`` new vertices (ids n..n+count-1) and the given edges"""
        return build_graph(self.n + count, list(self.edges) + list(new_edges), warn_duplicates=False)

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class VertexPath:
    vertices: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, index):
        return self.vertices[index]

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> "VertexPath":
        return VertexPath(tuple(reversed(self.vertices)))

    def is_valid_in(self, g: Graph) -> bool:
        if not self.vertices or len(set(self.vertices)) != len(self.vertices):
            return False
        if any(not 0 <= v < g.n for v in self.vertices):
            return False
        return all(g.has_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))


@dataclass(frozen=True)
class VertexCycle:
    vertices: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise GraphError(f"a cycle needs at least 3 vertices, got {len(self.vertices)}")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("cycle vertices must be distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __getitem__(self, index):
        return self.vertices[index]

    @property
    def residue(self) -> int:
        return len(self.vertices) % 3

    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    def cycle_edges(self) -> List[Edge]:
        t = len(self.vertices)
        return [_normalize(self.vertices[i], self.vertices[(i + 1) % t]) for i in range(t)]

    def canonical(self) -> "VertexCycle":
        """Rotation starting at the minimum vertex, heading toward its smaller neighbour"""
        t = len(self.vertices)
        i = self.vertices.index(min(self.vertices))
        forward = tuple(self.vertices[(i + s) % t] for s in range(t))
        backward = tuple(self.vertices[(i - s) % t] for s in range(t))
        return VertexCycle(min(forward, backward, key=lambda seq: seq[1]))

    def starting_at(self, v: int, toward: Optional[int] = None) -> Tuple[int, ...]:
        """Cyclic order beginning at ``v``; ``toward`` fixes the second vertex"""
        t = len(self.vertices)
        i = self.vertices.index(v)
        forward = tuple(self.vertices[(i + s) % t] for s in range(t))
        if toward is None or forward[1] == toward:
            return forward
        backward = tuple(self.vertices[(i - s) % t] for s in range(t))
        if backward[1] != toward:
            raise GraphError(f"{toward} is not next to {v} on the cycle")
        return backward

    def is_valid_in(self, g: Graph) -> bool:
        if any(not 0 <= v < g.n for v in self.vertices):
            return False
        return all(g.has_edge(u, v) for u, v in self.cycle_edges())

    def is_induced_in(self, g: Graph) -> bool:
        members = self.vertex_set()
        chords = sum(1 for u, v in g.edges if u in members and v in members)
        return chords == len(self.vertices)


def build_graph(n: int, edges: Iterable[Sequence[int]], warn_duplicates: bool = True) -> Graph:
    """Validate and freeze an edge list into a Graph"""
    if n < 0:
        raise VertexOutOfRangeError(f"vertex count must be non-negative, got {n}")
    normalized: Set[Edge] = set()
    duplicates = 0
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRangeError(f"vertex {w} not in 0..{n - 1}")
        edge = _normalize(u, v)
        if edge in normalized:
            duplicates += 1
        normalized.add(edge)
    if duplicates and warn_duplicates:
        logger.warning(f"⚠️ Ignored {duplicates} duplicate edge(s)")

    adjacency: List[List[int]] = [[] for _ in range(n)]
    for u, v in normalized:
        adjacency[u].append(v)
        adjacency[v].append(u)
    return Graph(n=n, edges=frozenset(normalized), adjacency=tuple(tuple(sorted(adj)) for adj in adjacency))


def from_networkx(graph: nx.Graph) -> Tuple[Graph, List]:
    """Convert a networkx graph, numbering nodes in sorted order"""
    nodes = sorted(graph.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    return build_graph(len(nodes), [(index[u], index[v]) for u, v in graph.edges()]), nodes


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments"""
    header: Optional[Tuple[int, int]] = None
    edges: List[Edge] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two integers, got {line!r}", line_no)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"expected two integers, got {line!r}", line_no)
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError("header values must be non-negative", line_no)
            header = (a, b)
            continue
        if a == b:
            raise EdgeListParseError(f"self-loop at vertex {a}", line_no)
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise EdgeListParseError(f"vertex out of range in {line!r}", line_no)
        edges.append((a, b))

    if header is None:
        raise EdgeListParseError("missing 'n m' header", 1)
    if len(edges) != header[1]:
        raise EdgeListParseError(f"header promises {header[1]} edges, found {len(edges)}", 1)
    return build_graph(header[0], edges)


def read_edge_list(path: Union[str, Path]) -> Graph:
    with open(path, "r") as f:
        return parse_edge_list(f.read())


def closed_neighborhood(g: Graph, S: Iterable[int]) -> FrozenSet[int]:
    result: Set[int] = set()
    for v in S:
        result.add(v)
        result.update(g.neighbors(v))
    return frozenset(result)


def induced_cycles_up_to(g: Graph, L: int) -> List[VertexCycle]:
    """All chordless cycles with at most ``L`` vertices, canonical and sorted"""
    if L < 3:
        return []
    found: Set[Tuple[int, ...]] = set()
    for cycle in nx.chordless_cycles(g.to_networkx(), length_bound=L):
        if len(cycle) >= 3:
            found.add(VertexCycle(tuple(cycle)).canonical().vertices)
    return [VertexCycle(vertices) for vertices in sorted(found, key=lambda c: (len(c), c))]


def longest_path(g: Graph) -> VertexPath:
    """Exact longest path by ordered DFS.

    Starts and extensions are tried in increasing id order and only strictly
    longer paths replace the incumbent, so the result is the lexicographically
    smallest among the longest paths. Branches are cut when the vertices still
    reachable from the tip cannot beat the incumbent.
    """
    if g.n == 0:
        raise DisconnectedError("the empty graph has no path")
    if not g.is_connected():
        raise DisconnectedError("longest_path needs a connected graph")

    best: List[int] = [0]
    path: List[int] = []
    on_path = [False] * g.n

    def reachable_from(v: int) -> int:
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for w in g.adjacency[x]:
                if w not in seen and not on_path[w]:
                    seen.add(w)
                    queue.append(w)
        return len(seen) - 1

    def extend(v: int) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = list(path)
            if len(best) == g.n:
                return True
        if len(path) + reachable_from(v) <= len(best):
            return False
        for w in g.adjacency[v]:
            if not on_path[w]:
                on_path[w] = True
                path.append(w)
                done = extend(w)
                path.pop()
                on_path[w] = False
                if done:
                    return True
        return False

    for start in range(g.n):
        on_path[start] = True
        path.append(start)
        done = extend(start)
        path.pop()
        on_path[start] = False
        if done:
            break

    logger.debug(f"Longest path has {len(best)} vertices")
    return VertexPath(tuple(best))


def shortest_connecting_path(g: Graph, A: Iterable[int], B: Iterable[int], avoid: Iterable[int] = ()) -> VertexPath:
    """Shortest path from a vertex of A to a vertex of B with interior outside A, B and ``avoid``.

    Ties go to the smallest (start, end) pair, then to the BFS tree built with
    sorted neighbour lists.
    """
    sources, targets = sorted(set(A)), set(B)
    if not sources or not targets:
        raise ValueError("both vertex sets must be nonempty")
    if targets.intersection(sources):
        raise ValueError("vertex sets must be disjoint")
    g.check_vertices(sources)
    g.check_vertices(targets)
    blocked = set(sources) | targets | set(avoid)

    best: Optional[Tuple[int, int, int, List[int]]] = None
    for a in sources:
        parents: Dict[int, int] = {a: -1}
        queue = deque([a])
        hit: Optional[Tuple[int, int]] = None
        while queue:
            x = queue.popleft()
            if hit is not None and len(_trace(parents, x)) >= hit[0]:
                break
            for w in g.adjacency[x]:
                if w in parents:
                    continue
                if w in targets:
                    parents[w] = x
                    length = len(_trace(parents, w))
                    if hit is None or (length, w) < hit:
                        hit = (length, w)
                    continue
                if w in blocked:
                    continue
                parents[w] = x
                queue.append(w)
        if hit is not None:
            candidate = (hit[0], a, hit[1], _trace(parents, hit[1]))
            if best is None or candidate[:3] < best[:3]:
                best = candidate

    if best is None:
        raise NoPathError("no path joins the two vertex sets")
    return VertexPath(tuple(best[3]))


def _trace(parents: Dict[int, int], v: int) -> List[int]:
    path = [v]
    while parents[path[-1]] != -1:
        path.append(parents[path[-1]])
    return list(reversed(path))
