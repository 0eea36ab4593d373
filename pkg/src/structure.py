"""Hypothesis checks and structural searches on the host graph.

A *bad* cycle has length 0 or 2 mod 3. The decomposition covers every bad
cycle with components of a few known shapes; the attachment search finds the
ear or pendant (tailed) cycle that lets a covered part grow by one step.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.graph_core import (
    Edge,
    Graph,
    NoPathError,
    VertexCycle,
    VertexPath,
    induced_cycles_up_to,
    shortest_connecting_path,
)

DEFAULT_SEARCH_BUDGET = 2_000_000
DEFAULT_REFINE_ITERATIONS = 32

logger = logging.getLogger("structure")


class StructureError(Exception):
    """Base exception for structural searches"""
    pass


class HypothesisUnmetError(StructureError):
    """Raised when an operation needs the forbidden-cycle hypotheses and they fail"""
    pass


class NoAttachmentError(StructureError):
    """Raised when no ear or pendant cycle leaves the covered set"""
    pass


class NotEnoughDisjointCyclesError(StructureError):
    """Raised when the graph lacks two vertex-disjoint bad cycles"""
    pass


class DecompositionError(StructureError):
    """Raised when a decomposition cannot be built or fails validation"""
    pass


class SearchBudgetExceededError(StructureError):
    """Raised when an exhaustive search runs past its step budget"""
    pass


# ---------------------------------------------------------------------------
# Hypotheses and cycle enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypothesisReport:
    k: int
    n: int
    n_ok: bool
    delta_ok: bool
    forbidden_found: Tuple[VertexCycle, ...]

    @property
    def passes(self) -> bool:
        return self.n_ok and self.delta_ok and not self.forbidden_found

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "n_ok": self.n_ok,
            "delta_ok": self.delta_ok,
            "forbidden_found": [list(c.vertices) for c in self.forbidden_found],
            "passes": self.passes,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HypothesisReport":
        return cls(
            k=data["k"],
            n=data["n"],
            n_ok=data["n_ok"],
            delta_ok=data["delta_ok"],
            forbidden_found=tuple(VertexCycle(tuple(c)) for c in data["forbidden_found"]),
        )


def check_hypotheses(g: Graph, k: int) -> HypothesisReport:
    """Order at least 6k+9, minimum degree 2, no induced C_5, C_8, ..., C_{3k+2}"""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    forbidden = tuple(
        c for c in induced_cycles_up_to(g, 3 * k + 2)
        if len(c) >= 5 and c.residue == 2
    )
    report = HypothesisReport(
        k=k,
        n=g.n,
        n_ok=g.n >= 6 * k + 9,
        delta_ok=g.n > 0 and g.min_degree() >= 2,
        forbidden_found=forbidden,
    )
    logger.debug(f"Hypotheses for k={k}: n_ok={report.n_ok}, delta_ok={report.delta_ok}, "
                 f"{len(forbidden)} forbidden cycle(s)")
    return report


def iter_cycles(g: Graph, length_bound: Optional[int] = None,
                budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[VertexCycle]:
    """Every simple cycle once, in canonical form"""
    seen: Set[Tuple[int, ...]] = set()
    for steps, raw in enumerate(nx.simple_cycles(g.to_networkx(), length_bound=length_bound), start=1):
        if steps > budget:
            raise SearchBudgetExceededError(f"cycle enumeration exceeded {budget} steps")
        if len(raw) < 3:
            continue
        cycle = VertexCycle(tuple(raw)).canonical()
        if cycle.vertices not in seen:
            seen.add(cycle.vertices)
            yield cycle


def bad_cycles(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> List[VertexCycle]:
    """Cycles of length 0 or 2 mod 3, shortest first then lexicographic"""
    found = [c for c in iter_cycles(g, budget=budget) if c.residue != 1]
    return sorted(found, key=lambda c: (len(c), c.vertices))


@dataclass(frozen=True)
class CycleProfile:
    bad_cycles: Tuple[VertexCycle, ...]
    has_disjoint_pair: bool

    @property
    def zero_cycles(self) -> Tuple[VertexCycle, ...]:
        return tuple(c for c in self.bad_cycles if c.residue == 0)

    @property
    def two_cycles(self) -> Tuple[VertexCycle, ...]:
        return tuple(c for c in self.bad_cycles if c.residue == 2)


def cycle_profile(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET) -> CycleProfile:
    cycles = bad_cycles(g, budget)
    disjoint = any(
        not (a.vertex_set() & b.vertex_set())
        for a, b in combinations(cycles, 2)
    )
    return CycleProfile(bad_cycles=tuple(cycles), has_disjoint_pair=disjoint)


def residue_floor_check(g: Graph, k: int, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """Audit: induced 2 mod 3 cycles have length >= 3k+5, the others >= 6k+8"""
    if not check_hypotheses(g, k).passes:
        raise HypothesisUnmetError("graph does not satisfy the forbidden-cycle hypotheses")
    cycles = list(iter_cycles(g, budget=budget))
    if any(c.residue == 0 for c in cycles):
        raise HypothesisUnmetError("graph has a cycle of length 0 mod 3")
    for c in cycles:
        if c.residue != 2:
            continue
        floor = 3 * k + 5 if c.is_induced_in(g) else 6 * k + 8
        if len(c) < floor:
            logger.warning(f"⚠️ Cycle {list(c.vertices)} of length {len(c)} is below the floor {floor}")
            return False
    return True


# ---------------------------------------------------------------------------
# Attachments
# ---------------------------------------------------------------------------

class AttachmentKind(str, Enum):
    EAR = "ear"
    PENDANT_CYCLE = "pendant-cycle"
    PENDANT_TAILED_CYCLE = "pendant-tailed-cycle"


@dataclass(frozen=True)
class Attachment:
    """One growth step out of the covered set.

    ``path`` is v_1..v_t as found by the search, v_1 next to the covered set.
    For a pendant cycle the cycle is the path itself. For a pendant tailed
    cycle the tail y_1..y_l is v_{j-1}..v_1 and the cycle x_1..x_m is
    v_j..v_t, so reading ``path`` forward gives y_l..y_1 x_1..x_m.
    """
    kind: AttachmentKind
    path: VertexPath
    anchors: Tuple[int, ...]
    far_anchors: Tuple[int, ...] = ()
    cycle: Optional[VertexCycle] = None
    tail: Optional[VertexPath] = None

    @property
    def new_vertices(self) -> Tuple[int, ...]:
        return self.path.vertices


def _covered_neighbors(g: Graph, covered: FrozenSet[int], v: int) -> Tuple[int, ...]:
    return tuple(w for w in g.adjacency[v] if w in covered)


def _closed(g: Graph, inside: Set[int], v: int) -> bool:
    return all(w in inside for w in g.adjacency[v])


def _classify_path(g: Graph, covered: FrozenSet[int], path: Sequence[int]) -> Optional[Attachment]:
    members = set(path)
    inside = members | covered
    first, last, t = path[0], path[-1], len(path)
    anchors = _covered_neighbors(g, covered, first)

    far = _covered_neighbors(g, covered, last)
    if far and _closed(g, inside, first) and _closed(g, inside, last):
        return Attachment(AttachmentKind.EAR, VertexPath(tuple(path)), anchors, far_anchors=far)

    if t >= 3 and g.has_edge(last, first) and _closed(g, inside, last):
        return Attachment(AttachmentKind.PENDANT_CYCLE, VertexPath(tuple(path)), anchors,
                          cycle=VertexCycle(tuple(path)))

    for j in range(2, t - 1):
        if g.has_edge(last, path[j - 1]):
            cycle = tuple(path[j - 1:])
            if _closed(g, inside, cycle[1]) and _closed(g, inside, cycle[-1]):
                return Attachment(AttachmentKind.PENDANT_TAILED_CYCLE, VertexPath(tuple(path)), anchors,
                                  cycle=VertexCycle(cycle), tail=VertexPath(tuple(reversed(path[:j - 1]))))
            break
    return None


def iter_attachments(g: Graph, covered: Iterable[int],
                     budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[Attachment]:
    """Every attachment out of ``covered``, longest path first, then lexicographic.

    An ear and its reversal are the same attachment; only the orientation
    with the smaller vertex sequence is reported.
    """
    covered = frozenset(covered)
    outside = [v for v in g.vertices() if v not in covered]
    if not outside:
        raise NoAttachmentError("every vertex is already covered")

    found: Dict[Tuple[int, ...], Attachment] = {}
    steps = 0
    path: List[int] = []
    on_path: Set[int] = set()

    def visit(v: int) -> None:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise SearchBudgetExceededError(f"attachment search exceeded {budget} steps")
        path.append(v)
        on_path.add(v)
        attachment = _classify_path(g, covered, path)
        if attachment is not None:
            key = tuple(path)
            if attachment.kind is AttachmentKind.EAR:
                key = min(key, tuple(reversed(key)))
                if key != tuple(path):
                    attachment = None
            if attachment is not None:
                found[key] = attachment
        for w in g.adjacency[v]:
            if w not in covered and w not in on_path:
                visit(w)
        path.pop()
        on_path.discard(v)

    for start in outside:
        if _covered_neighbors(g, covered, start):
            visit(start)

    logger.debug(f"Attachment search: {len(found)} candidate(s) in {steps} steps")
    for key in sorted(found, key=lambda vertices: (-len(vertices), vertices)):
        yield found[key]


def find_attachment(g: Graph, covered: Iterable[int], budget: int = DEFAULT_SEARCH_BUDGET) -> Attachment:
    for attachment in iter_attachments(g, covered, budget):
        return attachment
    raise NoAttachmentError("no ear, pendant cycle or pendant tailed cycle leaves the covered set")


def attachment_closure_holds(g: Graph, covered: Iterable[int], attachment: Attachment) -> bool:
    """Re-check an attachment against the graph without trusting the search"""
    covered = frozenset(covered)
    path = attachment.path
    if not path.is_valid_in(g) or any(v in covered for v in path):
        return False
    inside = set(path) | covered
    if not _covered_neighbors(g, covered, path.first):
        return False

    if attachment.kind is AttachmentKind.EAR:
        return (bool(_covered_neighbors(g, covered, path.last))
                and _closed(g, inside, path.first) and _closed(g, inside, path.last))
    cycle = attachment.cycle
    if cycle is None or not cycle.is_valid_in(g):
        return False
    if attachment.kind is AttachmentKind.PENDANT_CYCLE:
        return cycle.vertices == path.vertices and _closed(g, inside, cycle[-1])
    tail = attachment.tail
    if tail is None or tuple(reversed(tail.vertices)) + cycle.vertices != path.vertices:
        return False
    return _closed(g, inside, cycle[1]) and _closed(g, inside, cycle[-1])


# ---------------------------------------------------------------------------
# Component classification
# ---------------------------------------------------------------------------

class ComponentTag(str, Enum):
    F0 = "F0"
    F02 = "F02"
    F22 = "F22"
    F3 = "F3"
    BRS = "Brs"
    OTHER = "Other"


@dataclass(frozen=True)
class TailedArm:
    """A cycle reached from the special vertex through a tail.

    ``cycle`` starts at x_1, the vertex next to y_1; ``tail`` is y_1..y_l with
    y_l next to the special vertex.
    """
    cycle: VertexCycle
    tail: VertexPath


@dataclass(frozen=True)
class ComponentClass:
    """Tag plus the witnesses the constructions need.

    Cycles always start at their attachment vertex. F02 and F22 list the
    2 mod 3 cycle first and a single connector running from it to the other
    cycle. F3 lists the F02 pair, then the F22 pair, and the connectors of
    both pairs followed by the link from the F02 side to the F22 side.
    """
    tag: ComponentTag
    r: int = 0
    s: int = 0
    special_vertex: Optional[int] = None
    near_cycles: Tuple[VertexCycle, ...] = ()
    tailed: Tuple[TailedArm, ...] = ()
    cycles: Tuple[VertexCycle, ...] = ()
    connectors: Tuple[VertexPath, ...] = ()

    @property
    def is_strong(self) -> bool:
        if self.tag is ComponentTag.BRS:
            return self.s <= 2
        return self.tag in (ComponentTag.F0, ComponentTag.F02, ComponentTag.F3)

    def label(self) -> str:
        if self.tag is ComponentTag.BRS:
            return f"B({self.r},{self.s})"
        return self.tag.value


OTHER = ComponentClass(ComponentTag.OTHER)


def _cycle_blocks(h: Graph) -> Optional[List[VertexCycle]]:
    """Non-bridge blocks as cycles, or None if a block is not a simple cycle or two share a vertex"""
    graph = h.to_networkx()
    cycles = []
    for block in nx.biconnected_components(graph):
        if len(block) < 3:
            continue
        sub = graph.subgraph(block)
        if sub.number_of_edges() != len(block):
            return None
        start = min(block)
        order, prev, cur = [start], None, start
        while True:
            step = min(w for w in sub.neighbors(cur) if w != prev)
            if step == start:
                break
            order.append(step)
            prev, cur = cur, step
        cycles.append(VertexCycle(tuple(order)).canonical())
    seen: Set[int] = set()
    for cycle in cycles:
        if seen & cycle.vertex_set():
            return None
        seen |= cycle.vertex_set()
    return sorted(cycles, key=lambda c: c.vertices)


def _walk(h: Graph, on_cycle: Dict[int, int], start: int, step: int) -> Optional[List[int]]:
    """Follow degree-2 off-cycle vertices from ``start`` through ``step`` to the next cycle vertex"""
    walk = [start, step]
    while walk[-1] not in on_cycle:
        cur = walk[-1]
        if h.degree(cur) != 2:
            return None
        nxt = [w for w in h.adjacency[cur] if w != walk[-2]]
        walk.append(nxt[0])
    return walk


def _attachments_of(h: Graph, cycle: VertexCycle) -> List[int]:
    return [v for v in cycle if h.degree(v) > 2]


def _rotate(cycle: VertexCycle, start: int) -> VertexCycle:
    return VertexCycle(cycle.starting_at(start))


def _classify_pair(h: Graph, cycles: List[VertexCycle]) -> ComponentClass:
    on_cycle = {v: i for i, c in enumerate(cycles) for v in c}
    ends = [_attachments_of(h, c) for c in cycles]
    if any(len(e) != 1 or h.degree(e[0]) != 3 for e in ends):
        return OTHER
    a = ends[0][0]
    step = next(w for w in h.adjacency[a] if w not in cycles[0].vertex_set())
    walk = _walk(h, on_cycle, a, step)
    if walk is None or on_cycle[walk[-1]] != 1:
        return OTHER

    first, second = _rotate(cycles[0], a), _rotate(cycles[1], walk[-1])
    residues = (first.residue, second.residue)
    path = VertexPath(tuple(walk))
    if sorted(residues) == [0, 2]:
        if first.residue == 0:
            first, second, path = second, first, path.reversed()
        return ComponentClass(ComponentTag.F02, cycles=(first, second), connectors=(path,))
    if residues != (2, 2):
        return OTHER
    if len(path) == 2:
        return ComponentClass(ComponentTag.F22, cycles=(first, second), connectors=(path,))
    if len(path) == 3:
        return ComponentClass(ComponentTag.BRS, r=0, s=2, special_vertex=path[1],
                              near_cycles=(first, second), cycles=(first, second))
    hub = path[-2]
    arm = TailedArm(cycle=first, tail=VertexPath(path.vertices[1:-2]))
    return ComponentClass(ComponentTag.BRS, r=1, s=1, special_vertex=hub, near_cycles=(second,),
                          tailed=(arm,), cycles=(first, second))


def _classify_star(h: Graph, cycles: List[VertexCycle]) -> ComponentClass:
    if any(c.residue != 2 for c in cycles):
        return OTHER
    on_cycle = {v: i for i, c in enumerate(cycles) for v in c}
    hubs = [v for v in h.vertices() if v not in on_cycle and h.degree(v) >= 3]
    if len(hubs) != 1:
        return OTHER
    for c in cycles:
        ends = _attachments_of(h, c)
        if len(ends) != 1 or h.degree(ends[0]) != 3:
            return OTHER
    hub = hubs[0]
    near, tailed, reached = [], [], set()
    for w in h.adjacency[hub]:
        walk = _walk(h, on_cycle, hub, w)
        if walk is None:
            return OTHER
        index = on_cycle[walk[-1]]
        if index in reached:
            return OTHER
        reached.add(index)
        cycle = _rotate(cycles[index], walk[-1])
        if len(walk) == 2:
            near.append(cycle)
        else:
            tailed.append(TailedArm(cycle=cycle, tail=VertexPath(tuple(reversed(walk[1:-1])))))
    if len(reached) != len(cycles):
        return OTHER
    return ComponentClass(ComponentTag.BRS, r=len(tailed), s=len(near), special_vertex=hub,
                          near_cycles=tuple(near), tailed=tuple(tailed), cycles=tuple(cycles))


def _classify_f3(h: Graph, cycles: List[VertexCycle]) -> ComponentClass:
    twos = [c for c in cycles if c.residue == 2]
    for pair in combinations(twos, 2):
        members = pair[0].vertex_set() | pair[1].vertex_set()
        bridges = [(x, y) for x in pair[0] for y in h.adjacency[x] if y in pair[1].vertex_set()]
        leaving = [(x, w) for x in members for w in h.adjacency[x] if w not in members]
        if len(bridges) != 1 or len(leaving) != 1:
            continue
        x, w = leaving[0]
        link = [x, w]
        while h.degree(link[-1]) == 2 and not any(link[-1] in c.vertex_set() for c in cycles):
            link.append(next(u for u in h.adjacency[link[-1]] if u != link[-2]))
        rest = set(h.vertices()) - members - set(link[1:-1])
        sub, id_map = h.induced_subgraph(rest)
        inner = classify_component(sub)
        if inner.tag is not ComponentTag.F02:
            continue
        def lift(vertices):
            return tuple(id_map[v] for v in vertices)

        f02_cycles = tuple(VertexCycle(lift(c.vertices)) for c in inner.cycles)
        f02_path = VertexPath(lift(inner.connectors[0].vertices))
        bx, by = bridges[0]
        first = pair[0] if bx in pair[0].vertex_set() else pair[1]
        second = pair[1] if first is pair[0] else pair[0]
        f22_cycles = (_rotate(first, bx), _rotate(second, by))
        return ComponentClass(
            ComponentTag.F3,
            cycles=f02_cycles + f22_cycles,
            connectors=(f02_path, VertexPath((bx, by)), VertexPath(tuple(reversed(link)))),
        )
    return OTHER


def classify_component(h: Graph) -> ComponentClass:
    if h.n == 0 or not h.is_connected() or h.min_degree() < 2:
        return OTHER
    cycles = _cycle_blocks(h)
    if not cycles or h.m != h.n - 1 + len(cycles):
        return OTHER

    if len(cycles) == 1:
        if h.n == len(cycles[0]) and cycles[0].residue == 0:
            return ComponentClass(ComponentTag.F0, cycles=(cycles[0],))
        return OTHER
    if len(cycles) == 2:
        return _classify_pair(h, cycles)

    star = _classify_star(h, cycles)
    if star.tag is not ComponentTag.OTHER:
        return star
    if len(cycles) == 4 and sorted(c.residue for c in cycles) == [0, 2, 2, 2]:
        return _classify_f3(h, cycles)
    return OTHER


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionComponent:
    """A component on its own graph; ``id_map[i]`` is the host id of local vertex i"""
    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]
    graph: Graph
    id_map: Tuple[int, ...]
    cls: ComponentClass


@dataclass(frozen=True)
class Decomposition:
    g1_vertices: FrozenSet[int]
    g2_components: Tuple[DecompositionComponent, ...]
    family_size: int = 0

    def objective(self) -> Tuple[int, int, int, int]:
        strong = sum(1 for c in self.g2_components if c.cls.is_strong)
        f22 = sum(1 for c in self.g2_components if c.cls.tag is ComponentTag.F22)
        connectors = sum(len(path) for c in self.g2_components for path in c.cls.connectors)
        return (strong, self.family_size, -f22, connectors)

    def summary(self) -> List[str]:
        return [c.cls.label() for c in self.g2_components]


@dataclass
class _Unit:
    cycles: List[VertexCycle]
    paths: List[VertexPath] = field(default_factory=list)
    hubs: Set[int] = field(default_factory=set)
    kind: str = "single"

    def vertices(self) -> Set[int]:
        result: Set[int] = set()
        for c in self.cycles:
            result |= c.vertex_set()
        for p in self.paths:
            result |= set(p)
        return result

    def edges(self) -> Set[Edge]:
        result: Set[Edge] = set()
        for c in self.cycles:
            result.update(c.cycle_edges())
        for p in self.paths:
            result.update((min(a, b), max(a, b)) for a, b in zip(p, p.vertices[1:]))
        return result


def _seed_family(cycles: List[VertexCycle]) -> List[VertexCycle]:
    """First disjoint pair in length order, then greedy maximal extension"""
    for i, j in combinations(range(len(cycles)), 2):
        if not cycles[i].vertex_set() & cycles[j].vertex_set():
            family = [cycles[i], cycles[j]]
            used = cycles[i].vertex_set() | cycles[j].vertex_set()
            for c in cycles:
                if not c.vertex_set() & used:
                    family.append(c)
                    used |= c.vertex_set()
            return family
    raise NotEnoughDisjointCyclesError("the graph has no two vertex-disjoint bad cycles")


def _connect(g: Graph, source: Set[int], target: Set[int], used: Set[int]) -> Optional[VertexPath]:
    try:
        return shortest_connecting_path(g, source, target, avoid=used - source - target)
    except NoPathError:
        return None


def _pair_units(g: Graph, family: List[VertexCycle], two_order: List[VertexCycle]) -> List[_Unit]:
    used: Set[int] = set()
    for c in family:
        used |= c.vertex_set()
    zeros = [c for c in family if c.residue == 0]
    pending = list(two_order)
    units: List[_Unit] = []

    while pending:
        cycle = pending.pop(0)
        options = []
        for index, partner in enumerate(pending + zeros):
            path = _connect(g, set(cycle.vertex_set()), set(partner.vertex_set()), used)
            if path is not None:
                options.append((len(path), 0 if partner.residue == 0 else 1, index, partner, path))
        if options:
            _, _, _, partner, path = min(options, key=lambda o: o[:3])
            (zeros if partner.residue == 0 else pending).remove(partner)
            used |= set(path)
            unit = _Unit(cycles=[cycle, partner], paths=[path],
                         kind="f02" if partner.residue == 0 else "twin")
            unit.hubs = set(path.interior)
            units.append(unit)
            continue

        # a leftover 2 mod 3 cycle joins an existing hub as another arm
        joined = False
        for unit in [u for u in units if u.kind in ("twin", "star")]:
            for hub in sorted(unit.hubs):
                path = _connect(g, set(cycle.vertex_set()), {hub}, used)
                if path is not None:
                    unit.cycles.append(cycle)
                    unit.paths.append(path)
                    unit.hubs = {hub}
                    unit.kind = "star"
                    used |= set(path)
                    joined = True
                    break
            if joined:
                break
        if not joined:
            raise DecompositionError(f"cycle {list(cycle.vertices)} cannot be paired")

    units.extend(_Unit(cycles=[c]) for c in zeros)

    # F02 and F22 units joined through unused vertices become one F3 unit
    f22_units = [u for u in units if u.kind == "twin" and len(u.paths[0]) == 2]
    for unit in [u for u in units if u.kind == "f02"]:
        options = []
        for index, other in enumerate(f22_units):
            path = _connect(g, unit.vertices(), other.vertices(), used)
            if path is not None:
                options.append((len(path), index, other, path))
        if not options:
            continue
        _, _, other, path = min(options, key=lambda o: o[:2])
        unit.cycles.extend(other.cycles)
        unit.paths.extend(other.paths + [path])
        unit.kind = "f3"
        used |= set(path)
        f22_units.remove(other)
        units.remove(other)
    return units


def _pairing_orders(twos: List[VertexCycle], limit: int) -> Iterator[List[VertexCycle]]:
    seen: Set[Tuple[Tuple[int, ...], ...]] = set()
    candidates = [twos[i:] + twos[:i] for i in range(max(len(twos), 1))]
    candidates += [list(reversed(order)) for order in candidates]
    for order in candidates[:max(limit, 1)]:
        key = tuple(c.vertices for c in order)
        if key not in seen:
            seen.add(key)
            yield order


def _build(g: Graph, family: List[VertexCycle], units: List[_Unit]) -> Decomposition:
    components = []
    covered: Set[int] = set()
    for unit in units:
        vertices = unit.vertices()
        edges = unit.edges()
        graph, id_map = g.edge_subgraph(vertices, edges)
        cls = classify_component(graph)
        if cls.tag is ComponentTag.OTHER:
            raise DecompositionError(f"unit on {sorted(vertices)} does not match a known shape")
        components.append(DecompositionComponent(frozenset(vertices), frozenset(edges), graph, tuple(id_map), cls))
        covered |= vertices
    g1 = frozenset(v for v in g.vertices() if v not in covered)
    components.sort(key=lambda c: min(c.vertices))
    return Decomposition(g1_vertices=g1, g2_components=tuple(components), family_size=len(family))


def disjoint_bad_cycle_decomposition(g: Graph, budget: int = DEFAULT_SEARCH_BUDGET,
                                     refine_iterations: int = DEFAULT_REFINE_ITERATIONS) -> Decomposition:
    """Cover every bad cycle with known components and leave the rest as G1.

    The pairing of 2 mod 3 cycles is retried over rotated and reversed
    orders, keeping the decomposition with the best objective: strong
    components, then cycles used, then fewest F22 components, then connector
    length.
    """
    family = _seed_family(bad_cycles(g, budget))
    twos = [c for c in family if c.residue == 2]

    best: Optional[Decomposition] = None
    for attempt, order in enumerate(_pairing_orders(twos, refine_iterations)):
        try:
            candidate = _build(g, family, _pair_units(g, family, order))
        except DecompositionError as e:
            logger.debug(f"Pairing order {attempt} rejected: {e}")
            continue
        if best is None or candidate.objective() > best.objective():
            best = candidate

    if best is None:
        raise DecompositionError("no pairing of the disjoint cycles yields known components")
    validate_decomposition(g, best, budget)
    logger.info(f"Decomposition: {', '.join(best.summary())} with |G1| = {len(best.g1_vertices)}")
    return best


def validate_decomposition(g: Graph, decomposition: Decomposition, budget: int = DEFAULT_SEARCH_BUDGET) -> None:
    """Raise DecompositionError unless the decomposition partitions V, leaves G1
    free of bad cycles, and every component classifies to its recorded tag"""
    seen: Set[int] = set(decomposition.g1_vertices)
    for component in decomposition.g2_components:
        if seen & component.vertices:
            raise DecompositionError("components overlap")
        seen |= component.vertices
        for u, v in component.edges:
            if not g.has_edge(u, v):
                raise DecompositionError(f"({u}, {v}) is not a host edge")
        if sorted(component.id_map) != sorted(component.vertices):
            raise DecompositionError("component id map does not match its vertex set")
        tag = classify_component(component.graph).tag
        if tag is ComponentTag.OTHER or tag is not component.cls.tag:
            raise DecompositionError(f"component classifies as {tag.value}, recorded {component.cls.tag.value}")
    if seen != set(g.vertices()):
        raise DecompositionError("components and G1 do not cover the vertex set")

    sub, id_map = g.induced_subgraph(decomposition.g1_vertices)
    for cycle in iter_cycles(sub, budget=budget):
        if cycle.residue != 1:
            raise DecompositionError(f"G1 contains the bad cycle {[id_map[v] for v in cycle]}")
