"""Seeded graph families for tests and batch verification.

Vertex numbering is cycle-major and stable:

* Cycle: 0..n-1 in order.
* TailedCycle: cycle 0..m-1 with x_1 = 0, then the tail y_1..y_l with y_1 next to 0.
* F02: the 2 mod 3 cycle, the connector interior, then the 0 mod 3 cycle. The
  connector joins the first vertex of each cycle.
* F22: the two cycles, joined by an edge between their first vertices.
* F3: the F02 block, the F22 block, then the link interior. The link joins the
  second vertex of the 0 mod 3 cycle to the second vertex of the first F22 cycle.
* Brs: near cycles, then each tailed arm as cycle followed by y_1..y_l, the hub last.

Randomness comes from ``random.Random`` (Mersenne Twister) seeded with the
string ``"romanpy:<seed>"``; graphs inside a suite derive their own seed
from the suite seed and their position.
"""
import logging
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple, Union

import networkx as nx

from src.graph_core import Edge, Graph, build_graph, from_networkx
from src.structure import check_hypotheses

DEFAULT_GENERATOR_RETRIES = 10_000

logger = logging.getLogger("generators")


class GeneratorError(Exception):
    """Base exception for graph generation"""
    pass


class SpecInvalidError(GeneratorError):
    """Raised when family parameters break the family's residue or size rules"""
    pass


class RetriesExhaustedError(GeneratorError):
    """Raised when rejection sampling finds no acceptable graph"""
    pass


@dataclass(frozen=True)
class CycleSpec:
    n: int


@dataclass(frozen=True)
class TailedCycleSpec:
    m: int
    l: int


@dataclass(frozen=True)
class F02Spec:
    n0: int
    n2: int
    connector: int = 0


@dataclass(frozen=True)
class F22Spec:
    n2a: int
    n2b: int


@dataclass(frozen=True)
class F3Spec:
    f02: F02Spec
    f22: F22Spec
    connector: int = 0


@dataclass(frozen=True)
class BrsSpec:
    tails: Tuple[Tuple[int, int], ...] = ()
    cycles: Tuple[int, ...] = ()


@dataclass(frozen=True)
class RandomMinDeg2Spec:
    n: int
    edge_prob: float
    k_filter: int = 1


Family = Union[CycleSpec, TailedCycleSpec, F02Spec, F22Spec, F3Spec, BrsSpec, RandomMinDeg2Spec]


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    seed: int = 0

    def describe(self) -> str:
        return f"{type(self.family).__name__.replace('Spec', '')}{_params(self.family)}"


def _params(family: Family) -> str:
    values = [str(getattr(family, name)) for name in family.__dataclass_fields__]
    return "(" + ", ".join(values) + ")"


def _rng(seed: Union[int, str]) -> random.Random:
    return random.Random(f"romanpy:{seed}")


def _cycle(offset: int, t: int) -> List[Edge]:
    return [(offset + i, offset + (i + 1) % t) for i in range(t)]


def _chain(vertices: Sequence[int]) -> List[Edge]:
    return list(zip(vertices, vertices[1:]))


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise SpecInvalidError(message)


def _check_two(t: int, what: str) -> None:
    _need(t >= 5 and t % 3 == 2, f"{what} must be 2 mod 3 and at least 5, got {t}")


def _f02_edges(spec: F02Spec, offset: int = 0) -> Tuple[int, List[Edge], int]:
    """Edges of an F02 block, its order and the first vertex of its 0 mod 3 cycle"""
    _check_two(spec.n2, "F02 first cycle")
    _need(spec.n0 >= 3 and spec.n0 % 3 == 0, f"F02 second cycle must be 0 mod 3, got {spec.n0}")
    _need(spec.connector >= 0, "connector interior cannot be negative")
    interior = list(range(offset + spec.n2, offset + spec.n2 + spec.connector))
    zero = offset + spec.n2 + spec.connector
    edges = _cycle(offset, spec.n2) + _cycle(zero, spec.n0) + _chain([offset] + interior + [zero])
    return spec.n2 + spec.connector + spec.n0, edges, zero


def _f22_edges(spec: F22Spec, offset: int = 0) -> Tuple[int, List[Edge]]:
    _check_two(spec.n2a, "F22 first cycle")
    _check_two(spec.n2b, "F22 second cycle")
    second = offset + spec.n2a
    edges = _cycle(offset, spec.n2a) + _cycle(second, spec.n2b) + [(offset, second)]
    return spec.n2a + spec.n2b, edges


def _brs_edges(spec: BrsSpec) -> Tuple[int, List[Edge]]:
    _need(len(spec.tails) + len(spec.cycles) >= 2, "B(r, s) needs r + s >= 2")
    edges: List[Edge] = []
    hub_edges: List[int] = []
    offset = 0
    for t in spec.cycles:
        _check_two(t, "near cycle")
        edges += _cycle(offset, t)
        hub_edges.append(offset)
        offset += t
    for m, l in spec.tails:
        _check_two(m, "tailed cycle")
        _need(l >= 1, f"tail length must be at least 1, got {l}")
        edges += _cycle(offset, m)
        tail = list(range(offset + m, offset + m + l))
        edges += _chain([offset] + tail)
        hub_edges.append(tail[-1])
        offset += m + l
    hub = offset
    edges += [(hub, v) for v in hub_edges]
    return offset + 1, edges


def _random_graph(spec: RandomMinDeg2Spec, seed: int, retries: int) -> Graph:
    _need(spec.n >= 3, f"random graphs need at least 3 vertices, got {spec.n}")
    _need(0.0 <= spec.edge_prob <= 1.0, f"edge probability must lie in [0, 1], got {spec.edge_prob}")
    _need(spec.k_filter >= 0, "k_filter cannot be negative")
    rng = _rng(seed)
    for attempt in range(retries):
        graph = nx.gnp_random_graph(spec.n, spec.edge_prob, seed=rng.randrange(2 ** 32))
        for v in sorted(graph.nodes()):
            while graph.degree(v) < 2:
                graph.add_edge(v, rng.choice([w for w in graph.nodes() if w != v and not graph.has_edge(v, w)]))
        if not nx.is_connected(graph):
            continue
        g, _ = from_networkx(graph)
        if check_hypotheses(g, spec.k_filter).passes:
            logger.debug(f"Random graph accepted after {attempt + 1} attempt(s)")
            return g
    raise RetriesExhaustedError(f"no graph passed the k={spec.k_filter} hypotheses in {retries} attempts")


def generate(spec: FamilySpec, retries: int = DEFAULT_GENERATOR_RETRIES) -> Graph:
    family = spec.family
    if isinstance(family, CycleSpec):
        _need(family.n >= 3, f"a cycle needs at least 3 vertices, got {family.n}")
        return build_graph(family.n, _cycle(0, family.n))
    if isinstance(family, TailedCycleSpec):
        _need(family.m >= 3 and family.l >= 1, f"tailed cycle needs m >= 3 and l >= 1, got {family}")
        tail = list(range(family.m, family.m + family.l))
        return build_graph(family.m + family.l, _cycle(0, family.m) + _chain([0] + tail))
    if isinstance(family, F02Spec):
        n, edges, _ = _f02_edges(family)
        return build_graph(n, edges)
    if isinstance(family, F22Spec):
        return build_graph(*_f22_edges(family))
    if isinstance(family, F3Spec):
        n02, edges, zero = _f02_edges(family.f02)
        n22, edges22 = _f22_edges(family.f22, n02)
        _need(family.connector >= 0, "link interior cannot be negative")
        link = list(range(n02 + n22, n02 + n22 + family.connector))
        edges += edges22 + _chain([zero + 1] + link + [n02 + 1])
        return build_graph(n02 + n22 + family.connector, edges)
    if isinstance(family, BrsSpec):
        return build_graph(*_brs_edges(family))
    if isinstance(family, RandomMinDeg2Spec):
        return _random_graph(family, spec.seed, retries)
    raise SpecInvalidError(f"unknown family {type(family).__name__}")


def _two_lengths(cap: int) -> List[int]:
    return list(range(5, cap + 1, 3))


def _family_specs(size_cap: int) -> List[Family]:
    specs: List[Family] = [CycleSpec(n) for n in range(3, size_cap + 1)]
    specs += [TailedCycleSpec(m, l) for m in range(3, size_cap) for l in range(1, size_cap - m + 1)]

    twos = _two_lengths(size_cap)
    for n2 in twos:
        for n0 in range(3, size_cap + 1, 3):
            specs += [F02Spec(n0, n2, q) for q in range(3) if n0 + n2 + q <= size_cap]
    specs += [F22Spec(a, b) for a, b in combinations_with_replacement(twos, 2) if a + b <= size_cap]

    for arms in range(2, 4):
        for lengths in combinations_with_replacement(twos, arms):
            for r in range(arms + 1):
                for tail in (1, 2):
                    tails = tuple((t, tail) for t in lengths[:r])
                    spec = BrsSpec(tails=tails, cycles=tuple(lengths[r:]))
                    if sum(lengths) + r * tail + 1 <= size_cap and (r > 0 or tail == 1):
                        specs.append(spec)

    for n2 in twos:
        for n0 in range(3, size_cap + 1, 3):
            for a, b in combinations_with_replacement(twos, 2):
                for q in range(2):
                    if n2 + n0 + a + b + q <= size_cap:
                        specs.append(F3Spec(F02Spec(n0, n2), F22Spec(a, b), q))
    return specs


def family_suite(k: int, size_cap: int, seed: int = 0, random_count: int = 2,
                 retries: int = DEFAULT_GENERATOR_RETRIES) -> List[Tuple[Graph, FamilySpec]]:
    """Every family with residue-legal parameters of order at most ``size_cap``
    and no forbidden induced cycle for ``k``, followed by ``random_count``
    random graphs when ``size_cap`` reaches 6k+9"""
    suite: List[Tuple[Graph, FamilySpec]] = []
    for family in _family_specs(size_cap):
        spec = FamilySpec(family, seed)
        g = generate(spec)
        if not check_hypotheses(g, k).forbidden_found:
            suite.append((g, spec))

    low = 6 * k + 9
    if size_cap >= low:
        rng = _rng(seed)
        for index in range(random_count):
            n = rng.randint(low, size_cap)
            spec = FamilySpec(RandomMinDeg2Spec(n, edge_prob=0.2, k_filter=k), seed=_derived_seed(seed, index))
            try:
                suite.append((generate(spec, retries), spec))
            except RetriesExhaustedError as e:
                logger.warning(f"⚠️ Skipping random graph {index}: {e}")
    logger.info(f"Family suite for k={k}, cap {size_cap}: {len(suite)} graph(s)")
    return suite


def _derived_seed(seed: int, index: int) -> int:
    return _rng(f"{seed}/{index}").randrange(2 ** 31)


def parse_family(name: str, params: Sequence[str], seed: int = 0) -> FamilySpec:
    """Build a spec from command-line words, e.g. ``cycle 17`` or ``brs 5:1 5 5``"""
    try:
        name = name.lower()
        if name == "cycle":
            return FamilySpec(CycleSpec(int(params[0])), seed)
        if name == "tailed":
            return FamilySpec(TailedCycleSpec(int(params[0]), int(params[1])), seed)
        if name == "f02":
            q = int(params[2]) if len(params) > 2 else 0
            return FamilySpec(F02Spec(int(params[0]), int(params[1]), q), seed)
        if name == "f22":
            return FamilySpec(F22Spec(int(params[0]), int(params[1])), seed)
        if name == "f3":
            q = int(params[4]) if len(params) > 4 else 0
            return FamilySpec(F3Spec(F02Spec(int(params[0]), int(params[1])),
                                     F22Spec(int(params[2]), int(params[3])), q), seed)
        if name == "brs":
            tails = tuple(tuple(int(x) for x in p.split(":")) for p in params if ":" in p)
            cycles = tuple(int(p) for p in params if ":" not in p)
            return FamilySpec(BrsSpec(tails=tails, cycles=cycles), seed)
        if name == "random":
            k_filter = int(params[2]) if len(params) > 2 else 1
            return FamilySpec(RandomMinDeg2Spec(int(params[0]), float(params[1]), k_filter), seed)
    except (IndexError, ValueError) as e:
        raise SpecInvalidError(f"bad parameters for {name}: {' '.join(params)}") from e
    raise SpecInvalidError(f"unknown family '{name}'")
