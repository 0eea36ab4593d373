"""Explicit 3-tuples of Roman dominating functions for cycles, ears and gadgets.

Every construction is described by the set of vertices each component labels
2. ``settle_labels`` then gives each new vertex 0 when a neighbour carries a 2
in that component and 1 otherwise, so all three components are valid by
construction and the interesting part is the weight and the strong set.

Placements follow a phase pattern along a vertex sequence s_1, s_2, ...:
position i goes to the component picked by ``i % 3``. Positions are 1-based
throughout, ``span(a, b)`` is a, a+3, ... up to b.

The kernels (``*_twos``) work on any vertex ids and are shared with the
bound engine. The public operations build the standalone graphs with this
numbering: cycle vertices first (x_i has id i-1), then tails or connectors,
then a hub if there is one.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from src.graph_core import Graph, build_graph
from src.rdf_core import RdfTriple, RomanFunction

logger = logging.getLogger("constructors")

Twos = List[Set[int]]

# position residue -> component for standalone constructions
STANDARD_ROLES = {1: 0, 2: 1, 0: 2}


class ConstructionError(Exception):
    """Base exception for triple constructions"""
    pass


class UnsupportedResidueError(ConstructionError):
    """Raised for a cycle length with no standalone construction"""
    pass


class BadResidueError(ConstructionError):
    """Raised when a length has the wrong residue mod 3"""
    pass


class BadTailError(ConstructionError):
    """Raised for a tail shorter than one vertex"""
    pass


class BadLengthError(ConstructionError):
    """Raised for an ear or cycle length outside the allowed range"""
    pass


class NotStrongError(ConstructionError):
    """Raised when an anchor vertex is not labelled 2 by any component"""
    pass


class ResidueMismatchError(ConstructionError):
    """Raised when gadget cycle lengths do not fit the selected item"""
    pass


class ConnectorMismatchError(ConstructionError):
    """Raised when a gadget connector does not fit the selected item"""
    pass


class TooFewCyclesError(ConstructionError):
    """Raised when a star of cycles has fewer than three cycles"""
    pass


class ConditionViolatedError(ConstructionError):
    """Raised when a chordal ear attaches at a forbidden index"""
    pass


@dataclass(frozen=True)
class AnchoredTriple:
    graph: Graph
    triple: RdfTriple
    strong_claimed: FrozenSet[int]
    weight_claimed: int

    def strong_in(self, v: int) -> List[int]:
        """Indices of the components labelling ``v`` with 2"""
        return [c for c, f in enumerate(self.triple) if f[v] == 2]


class ConnectorKind(str, Enum):
    IDENTIFY = "identify"
    EDGE = "edge"
    PATH = "path"


@dataclass(frozen=True)
class Connector:
    kind: ConnectorKind
    length: int = 0

    @classmethod
    def identify(cls) -> "Connector":
        return cls(ConnectorKind.IDENTIFY)

    @classmethod
    def edge(cls) -> "Connector":
        return cls(ConnectorKind.EDGE)

    @classmethod
    def path(cls, q: int) -> "Connector":
        if q < 1:
            raise BadLengthError(f"connector path needs at least one vertex, got {q}")
        return cls(ConnectorKind.PATH, q)

    @property
    def interior(self) -> int:
        return self.length if self.kind is ConnectorKind.PATH else 0


@dataclass(frozen=True)
class GadgetSpec:
    """Two cycles joined per item 1..10, or a star of cycles when ``case_id == "star"``"""
    case_id: Union[int, str]
    n1: int = 0
    n2: int = 0
    connector: Connector = Connector(ConnectorKind.EDGE)
    lengths: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def order(self) -> int:
        if self.case_id == "star":
            return 1 + sum(self.lengths)
        if self.connector.kind is ConnectorKind.IDENTIFY:
            return self.n1 + self.n2 - 1
        return self.n1 + self.n2 + self.connector.interior


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def span(first: int, last: int) -> range:
    if last < first:
        return range(0)
    return range(first, last + 1, 3)


def _pick(sequence: Sequence[int], positions: Iterable[int]) -> Set[int]:
    return {sequence[i - 1] for i in positions}


def phase_twos(sequence: Sequence[int], roles: Dict[int, int], skip: Iterable[int] = ()) -> Twos:
    skipped = set(skip)
    twos: Twos = [set(), set(), set()]
    for i, v in enumerate(sequence, start=1):
        if v not in skipped:
            twos[roles[i % 3]].add(v)
    return twos


def anchor_roles(anchor: int) -> Dict[int, int]:
    """Roles for a sequence hanging off a vertex labelled 2 in component ``anchor``"""
    others = [c for c in range(3) if c != anchor]
    return {0: anchor, 1: others[0], 2: others[1]}


def settle_labels(graph: Graph, labels: List[List[Optional[int]]], new_vertices: Iterable[int], twos: Twos) -> None:
    """Label ``new_vertices`` in place; other vertices keep their labels"""
    fresh = list(new_vertices)
    fresh_set = set(fresh)
    for c in range(3):
        stray = twos[c] - fresh_set
        if stray:
            raise ConstructionError(f"component {c + 1} places 2 on already labelled vertices {sorted(stray)}")
        for v in twos[c]:
            labels[c][v] = 2
    for c in range(3):
        for v in fresh:
            if labels[c][v] == 2:
                continue
            dominated = any(labels[c][w] == 2 for w in graph.adjacency[v])
            labels[c][v] = 0 if dominated else 1


def label_triple(graph: Graph, twos: Twos, base: Optional[AnchoredTriple] = None) -> RdfTriple:
    labels: List[List[Optional[int]]] = [[None] * graph.n for _ in range(3)]
    start = 0
    if base is not None:
        start = base.graph.n
        for c, f in enumerate(base.triple):
            labels[c][:start] = list(f.values)
    settle_labels(graph, labels, range(start, graph.n), twos)
    return RdfTriple(*(RomanFunction(graph, tuple(values)) for values in labels))


def cycle_twos(cycle: Sequence[int]) -> Twos:
    """Phase placement around a cycle; length 1 mod 3 leaves the last vertex out"""
    t = len(cycle)
    if t % 3 == 2:
        raise UnsupportedResidueError(f"no standalone triple for a cycle of length {t}")
    skip = [cycle[-1]] if t % 3 == 1 else []
    return phase_twos(cycle, STANDARD_ROLES, skip)


def rotation_cycle_twos(cycle: Sequence[int]) -> Twos:
    """Length 2 mod 3: the phase pattern plus x_1 doubled into the third component"""
    if len(cycle) % 3 != 2:
        raise BadResidueError(f"rotation triple needs length 2 mod 3, got {len(cycle)}")
    twos = phase_twos(cycle, STANDARD_ROLES)
    twos[2].add(cycle[0])
    return twos


def tailed_cycle_twos(cycle: Sequence[int], tail: Sequence[int]) -> Twos:
    """``cycle`` is x_1..x_m with x_1 next to the tail's y_1; ``tail`` is y_1..y_l"""
    sequence = list(reversed(tail)) + list(cycle)
    skip = [cycle[-1]] if len(cycle) % 3 == 1 else []
    return phase_twos(sequence, STANDARD_ROLES, skip)


def pendant_twos(anchor: int, sequence: Sequence[int], cycle_length: int) -> Twos:
    """Tail then cycle, read outward from a vertex labelled 2 in component ``anchor``.

    ``sequence`` is y_l..y_1 x_1..x_m for a tailed cycle or x_1..x_t for a
    bare cycle; the closing vertex is left out when the cycle is 1 mod 3.
    """
    skip = [sequence[-1]] if cycle_length % 3 == 1 else []
    return phase_twos(sequence, anchor_roles(anchor), skip)


# (same anchor component, length mod 3) -> span bounds per role, offsets from l
_EAR_SPANS = {
    (False, 0): ((3, 0), (1, -2), (2, -1)),
    (False, 1): ((3, -1), (2, -2), (1, 0)),
    (False, 2): ((3, -2), (2, -3), (1, -1)),
    (True, 0): ((4, -2), (2, -1), (3, 0)),
    (True, 1): ((4, -3), (3, -1), (2, -2)),
    (True, 2): ((3, -2), (1, -1), (2, 0)),
}


def ear_twos(ear: Sequence[int], a: int, b: int) -> Twos:
    """Ear y_1..y_l whose ends touch u (2 in component a) and v (2 in component b).

    Adds at most 2l and makes every interior vertex strong.
    """
    length = len(ear)
    if length < 1:
        raise BadLengthError("an ear needs at least one vertex")
    if a == b:
        rest = [c for c in range(3) if c != a]
        order = (a, rest[0], rest[1])
    else:
        order = (a, b, 3 - a - b)
    twos: Twos = [set(), set(), set()]
    for component, (first, offset) in zip(order, _EAR_SPANS[(a == b, length % 3)]):
        twos[component] |= _pick(ear, span(first, length + offset))
    return twos


def gadget_twos(sequence: Sequence[int], last_cycle_length: int) -> Twos:
    """Phase placement along x^1_2..x^1_{n1}, x^1_1, connector, x^2_1..x^2_{n2}"""
    skip = [sequence[-1]] if last_cycle_length % 3 == 1 else []
    return phase_twos(sequence, STANDARD_ROLES, skip)


def identify_twos(first: Sequence[int], second: Sequence[int]) -> Twos:
    """Two cycles sharing x = first[0] = second[0]; len(first) must be 2 mod 3"""
    if first[0] != second[0]:
        raise ConstructionError("both cycles must start at the shared vertex")
    x = first[0]
    ear_a, ear_b = list(first[1:]), list(second[1:])
    la, lb = len(ear_a), len(ear_b)
    twos: Twos = [set(), set(), set()]

    if len(second) % 3 == 0:
        # second cycle carries the phase pattern with x in f1, first closes as an ear at x
        twos = phase_twos(second, STANDARD_ROLES)
        twos[1] |= _pick(ear_a, span(1, la))
        twos[0] |= _pick(ear_a, span(3, la - 1))
        twos[2] |= _pick(ear_a, span(2, la - 2))
        return twos

    twos[0].add(x)
    twos[2].add(x)
    twos[1] |= _pick(ear_a, span(1, la))
    twos[0] |= _pick(ear_a, span(2, la))
    twos[2] |= _pick(ear_a, span(3, la))
    q = lb // 3
    twos[1] |= _pick(ear_b, span(2, 3 * q - 1))
    twos[0] |= _pick(ear_b, span(3, 3 * q if lb % 3 == 1 else 3 * q - 3))
    twos[2] |= _pick(ear_b, span(4, 3 * q - 2))
    return twos


def star_twos(hub: int, cycles: Sequence[Sequence[int]]) -> Twos:
    """Hub plus every third vertex of each cycle, the same in all three components.

    Each cycle must start at the vertex adjacent to the hub.
    """
    heavy = {hub}
    for cycle in cycles:
        heavy |= _pick(cycle, span(3, len(cycle)))
    return [set(heavy), set(heavy), set(heavy)]


def _ear_component(j: int) -> int:
    return {1: 0, 2: 1, 0: 2}[j % 3]


def chordal_ear_twos(cycle: Sequence[int], ear: Sequence[int], j: int, strict: bool = True) -> Twos:
    """Rotation triple on a 2 mod 3 cycle plus an ear from x_1 to x_j.

    ``ear`` runs y_1..y_l with y_1 next to x_1 and y_l next to x_j.
    """
    length = len(ear)
    if len(cycle) % 3 != 2:
        raise BadResidueError(f"cycle length must be 2 mod 3, got {len(cycle)}")
    if length % 3 == 0:
        raise BadResidueError(f"ear length must not be 0 mod 3, got {length}")
    if not 2 <= j <= len(cycle):
        raise ConditionViolatedError(f"attachment index {j} outside 2..{len(cycle)}")

    twos = rotation_cycle_twos(cycle)
    target = _ear_component(j)

    if length % 3 == 1:
        if j % 3 == 2:
            raise ConditionViolatedError("an ear of length 1 mod 3 cannot end at an index 2 mod 3")
        other = 2 if target == 0 else 0
        twos[target] |= _pick(ear, span(4, length - 3))
        twos[other] |= _pick(ear, span(3, length - 1))
        twos[1] |= _pick(ear, span(2, length - 2))
    elif j % 3 == 2:
        twos[0] |= _pick(ear, span(4, length - 1))
        twos[2] |= _pick(ear, span(3, length - 2))
        twos[1] |= _pick(ear, span(2, length - 3))
    else:
        if strict:
            raise ConditionViolatedError("an ear of length 2 mod 3 must end at an index 2 mod 3")
        other = 2 if target == 0 else 0
        twos[target] |= _pick(ear, span(3, length - 2))
        twos[other] |= _pick(ear, span(4, length - 1))
        twos[1] |= _pick(ear, span(2, length))
    return twos


# ---------------------------------------------------------------------------
# Standalone constructions
# ---------------------------------------------------------------------------

def _cycle_edges(vertices: Sequence[int]) -> List[Tuple[int, int]]:
    t = len(vertices)
    return [(vertices[i], vertices[(i + 1) % t]) for i in range(t)]


def _chain_edges(vertices: Sequence[int]) -> List[Tuple[int, int]]:
    return list(zip(vertices, vertices[1:]))


def _anchored(graph: Graph, twos: Twos, strong: Iterable[int], weight: int,
              base: Optional[AnchoredTriple] = None) -> AnchoredTriple:
    triple = label_triple(graph, twos, base)
    logger.debug(f"Built triple on n={graph.n}, weights {[f.weight for f in triple]}, claim {weight}")
    return AnchoredTriple(graph=graph, triple=triple, strong_claimed=frozenset(strong), weight_claimed=weight)


def triple_for_cycle(t: int) -> AnchoredTriple:
    if t < 3:
        raise BadLengthError(f"cycle length must be at least 3, got {t}")
    if t % 3 == 2:
        raise UnsupportedResidueError(f"no standalone triple for C_{t}; use rotation_triple_for_cycle")
    cycle = list(range(t))
    graph = build_graph(t, _cycle_edges(cycle))
    if t % 3 == 0:
        return _anchored(graph, cycle_twos(cycle), cycle, 2 * t)
    return _anchored(graph, cycle_twos(cycle), cycle[:-1], 2 * t + 1)


def rotation_triple_for_cycle(t: int) -> AnchoredTriple:
    """All-strong triple of weight 2t+2 on a cycle of length 2 mod 3"""
    if t < 5 or t % 3 != 2:
        raise BadResidueError(f"rotation triple needs t >= 5 and t = 2 mod 3, got {t}")
    cycle = list(range(t))
    graph = build_graph(t, _cycle_edges(cycle))
    return _anchored(graph, rotation_cycle_twos(cycle), cycle, 2 * t + 2)


def triple_for_tailed_cycle(m: int, l: int) -> AnchoredTriple:
    if m < 4 or m % 3 != 1:
        raise BadResidueError(f"cycle length must be 1 mod 3 and at least 4, got {m}")
    if l < 1:
        raise BadTailError(f"tail must have at least one vertex, got {l}")
    cycle = list(range(m))
    tail = list(range(m, m + l))
    graph = build_graph(m + l, _cycle_edges(cycle) + [(cycle[0], tail[0])] + _chain_edges(tail))
    strong = [v for v in graph.vertices() if v != cycle[-1]]
    return _anchored(graph, tailed_cycle_twos(cycle, tail), strong, 2 * (m + l) + 1)


def _require_strong(base: AnchoredTriple, *vertices: int) -> None:
    for v in vertices:
        base.graph.check_vertices([v])
        if not base.strong_in(v):
            raise NotStrongError(f"vertex {v} is not labelled 2 by any component")


def extend_along_ear(base: AnchoredTriple, u: int, v: int, l: int) -> AnchoredTriple:
    """Add a path y_1..y_l with edges u y_1 and y_l v; old labels are kept"""
    if l < 1:
        raise BadLengthError(f"ear length must be at least 1, got {l}")
    _require_strong(base, u, v)
    a = base.strong_in(u)[0]
    options = base.strong_in(v)
    b = next((c for c in options if c != a), options[0])

    ear = list(range(base.graph.n, base.graph.n + l))
    edges = [(u, ear[0])] + _chain_edges(ear) + [(ear[-1], v)]
    graph = base.graph.extend(l, edges)
    return _anchored(graph, ear_twos(ear, a, b), base.strong_claimed | set(ear[1:-1]),
                     base.weight_claimed + 2 * l, base)


def attach_pendant_cycle(base: AnchoredTriple, u: int, t: int) -> AnchoredTriple:
    if t % 3 == 0:
        raise BadResidueError(f"pendant cycle length must not be 0 mod 3, got {t}")
    if t < 4:
        raise BadLengthError(f"pendant cycle needs at least 4 vertices, got {t}")
    _require_strong(base, u)
    cycle = list(range(base.graph.n, base.graph.n + t))
    graph = base.graph.extend(t, [(u, cycle[0])] + _cycle_edges(cycle))
    twos = pendant_twos(base.strong_in(u)[0], cycle, t)
    if t % 3 == 1:
        return _anchored(graph, twos, base.strong_claimed | set(cycle[:-1]), base.weight_claimed + 2 * t, base)
    return _anchored(graph, twos, base.strong_claimed | set(cycle), base.weight_claimed + 2 * t + 1, base)


def attach_pendant_tailed_cycle(base: AnchoredTriple, u: int, m: int, l: int) -> AnchoredTriple:
    if m % 3 == 0:
        raise BadResidueError(f"cycle length must not be 0 mod 3, got {m}")
    if m < 4:
        raise BadLengthError(f"cycle needs at least 4 vertices, got {m}")
    if l < 1:
        raise BadTailError(f"tail must have at least one vertex, got {l}")
    _require_strong(base, u)
    start = base.graph.n
    cycle = list(range(start, start + m))
    tail = list(range(start + m, start + m + l))
    edges = _cycle_edges(cycle) + [(cycle[0], tail[0])] + _chain_edges(tail) + [(u, tail[-1])]
    graph = base.graph.extend(m + l, edges)
    sequence = list(reversed(tail)) + cycle
    twos = pendant_twos(base.strong_in(u)[0], sequence, m)
    added = set(cycle) | set(tail)
    if m % 3 == 1:
        return _anchored(graph, twos, base.strong_claimed | (added - {cycle[-1]}),
                         base.weight_claimed + 2 * (m + l), base)
    return _anchored(graph, twos, base.strong_claimed | added, base.weight_claimed + 2 * (m + l) + 1, base)


_ITEM_RESIDUES = {2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 2, 8: 0, 9: 0, 10: 0}


def _check_gadget(spec: GadgetSpec) -> None:
    if spec.case_id not in range(1, 11):
        raise ConstructionError(f"unknown gadget item {spec.case_id!r}")
    if spec.n1 < 5 or spec.n1 % 3 != 2:
        raise ResidueMismatchError(f"item {spec.case_id} needs n1 = 2 mod 3 and n1 >= 5, got {spec.n1}")
    if spec.n2 < 3:
        raise ResidueMismatchError(f"second cycle needs at least 3 vertices, got {spec.n2}")

    if spec.case_id == 1:
        if spec.connector.kind is not ConnectorKind.IDENTIFY:
            raise ConnectorMismatchError("item 1 identifies the two cycles")
        return

    if spec.n2 % 3 != _ITEM_RESIDUES[spec.case_id]:
        raise ResidueMismatchError(f"item {spec.case_id} needs n2 = {_ITEM_RESIDUES[spec.case_id]} mod 3, got {spec.n2}")
    wanted = (spec.case_id - 2) % 3
    connector = spec.connector
    if connector.kind is ConnectorKind.IDENTIFY:
        raise ConnectorMismatchError(f"item {spec.case_id} needs an edge or a path")
    if connector.kind is ConnectorKind.EDGE:
        if wanted != 0:
            raise ConnectorMismatchError(f"item {spec.case_id} needs a path of length {wanted} mod 3")
    elif connector.length % 3 != wanted:
        raise ConnectorMismatchError(f"item {spec.case_id} needs a path of length {wanted} mod 3, got {connector.length}")


def two_cycle_gadget(spec: GadgetSpec) -> AnchoredTriple:
    if spec.case_id == "star":
        return star_of_cycles(list(spec.lengths))
    _check_gadget(spec)
    n1, n2 = spec.n1, spec.n2
    first = list(range(n1))

    if spec.case_id == 1:
        second = [0] + list(range(n1, n1 + n2 - 1))
        graph = build_graph(n1 + n2 - 1, _cycle_edges(first) + _cycle_edges(second))
        strong = set(graph.vertices()) - {second[1], second[-1]}
        return _anchored(graph, identify_twos(first, second), strong, 2 * graph.n + 1)

    q = spec.connector.interior
    connector = list(range(n1, n1 + q))
    second = list(range(n1 + q, n1 + q + n2))
    edges = _cycle_edges(first) + _cycle_edges(second) + _chain_edges([first[0]] + connector + [second[0]])
    graph = build_graph(n1 + n2 + q, edges)
    sequence = first[1:] + [first[0]] + connector + second
    twos = gadget_twos(sequence, n2)

    if spec.case_id <= 4:
        return _anchored(graph, twos, set(graph.vertices()) - {second[-1]}, 2 * graph.n + 1)
    if spec.case_id <= 7:
        return _anchored(graph, twos, graph.vertices(), 2 * graph.n + 2)
    return _anchored(graph, twos, graph.vertices(), 2 * graph.n + 1)


def star_of_cycles(lengths: Sequence[int]) -> AnchoredTriple:
    if len(lengths) < 3:
        raise TooFewCyclesError(f"a star needs at least three cycles, got {len(lengths)}")
    bad = [t for t in lengths if t < 5 or t % 3 != 2]
    if bad:
        raise BadResidueError(f"star cycle lengths must be 2 mod 3 and at least 5, got {bad}")

    cycles, edges, offset = [], [], 0
    for t in lengths:
        cycle = list(range(offset, offset + t))
        cycles.append(cycle)
        edges.extend(_cycle_edges(cycle))
        offset += t
    hub = offset
    edges.extend((hub, cycle[0]) for cycle in cycles)
    graph = build_graph(offset + 1, edges)
    twos = star_twos(hub, cycles)
    return _anchored(graph, twos, twos[0], 2 * graph.n - len(lengths) + 4)


def cycle_with_chordal_ear(p: int, l: int, j: int, strict: bool = True) -> AnchoredTriple:
    """C_{3p+2} plus a path y_1..y_l with edges y_1 x_1 and y_l x_j"""
    if p < 1:
        raise BadLengthError(f"p must be at least 1, got {p}")
    if l < 1 or l % 3 == 0:
        raise BadResidueError(f"ear length must be 1 or 2 mod 3, got {l}")
    t = 3 * p + 2
    cycle = list(range(t))
    ear = list(range(t, t + l))
    twos = chordal_ear_twos(cycle, ear, j, strict)
    edges = _cycle_edges(cycle) + [(cycle[0], ear[0])] + _chain_edges(ear) + [(ear[-1], cycle[j - 1])]
    graph = build_graph(t + l, edges, warn_duplicates=False)
    strong = set(graph.vertices()) - {ear[0], ear[-1]}
    return _anchored(graph, twos, strong, 2 * graph.n + 1)
