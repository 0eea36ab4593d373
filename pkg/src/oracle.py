"""Exact Roman domination number and differential by subset enumeration.

Both searches rest on the same identity. Given the set S of vertices
labelled 2, an optimal completion puts 1 on every vertex outside N[S] and 0
everywhere else, so

    gamma_R(G) = min over S of 2|S| + (n - |N[S]|)

and the differential maximises |N[D]| - 2|D|, which is |B(D)| - |D|. The two
problems are mirror images and their optima add up to n on graphs without
isolated vertices; ``check_gallai`` runs them independently to confirm it.
"""
import logging
import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import FrozenSet, List, Optional, Tuple, Union

from src.graph_core import Graph
from src.rdf_core import RomanFunction, complete_from_twos

DEFAULT_ORACLE_LIMIT = 26

logger = logging.getLogger("oracle")


class OracleError(Exception):
    """Base exception for exact solver errors"""
    pass


class TooLargeError(OracleError):
    """Raised when the graph exceeds the configured oracle limit"""
    pass


class BadOrderError(OracleError):
    """Raised when a closed form is asked for an order outside its domain"""
    pass


class IsolatedVertexError(OracleError):
    """Raised when the Gallai identity is checked on a graph with isolated vertices"""
    pass


class ClosedFormKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: Union[RomanFunction, FrozenSet[int]]
    elapsed: float


def _neighborhood_masks(g: Graph) -> List[int]:
    masks = []
    for v in g.vertices():
        mask = 1 << v
        for w in g.adjacency[v]:
            mask |= 1 << w
        masks.append(mask)
    return masks


def _check_limit(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise TooLargeError(f"graph has {g.n} vertices, oracle limit is {limit}")


def gamma_r_exact(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> ExactResult:
    """Minimum RDF weight with the lexicographically smallest optimal labelling"""
    _check_limit(g, limit)
    start = time.perf_counter()
    masks = _neighborhood_masks(g)
    n = g.n

    best_value = n
    best_twos: Tuple[int, ...] = ()
    best_labels: Optional[Tuple[int, ...]] = None
    examined = 0

    for size in range(n + 1):
        if 2 * size > best_value:
            break
        for S in combinations(range(n), size):
            examined += 1
            covered = 0
            for v in S:
                covered |= masks[v]
            value = 2 * size + n - bin(covered).count("1")
            if value > best_value:
                continue
            labels = complete_from_twos(g, S).values
            if value < best_value or best_labels is None or labels < best_labels:
                best_value, best_twos, best_labels = value, S, labels

    witness = complete_from_twos(g, best_twos)
    elapsed = time.perf_counter() - start
    logger.debug(f"gamma_R search examined {examined} subsets in {elapsed:.3f}s")
    return ExactResult(value=best_value, witness=witness, elapsed=elapsed)


def differential_exact(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> ExactResult:
    """Maximum of |B(D)| - |D| over all D, smallest D by size then lexicographically"""
    _check_limit(g, limit)
    start = time.perf_counter()
    masks = _neighborhood_masks(g)
    n = g.n

    best_value = 0
    best_set: Tuple[int, ...] = ()
    examined = 0

    for size in range(1, n + 1):
        # |N[D]| - 2|D| is at most n - 2|D|
        if n - 2 * size <= best_value:
            break
        for D in combinations(range(n), size):
            examined += 1
            covered = 0
            for v in D:
                covered |= masks[v]
            value = bin(covered).count("1") - 2 * size
            if value > best_value:
                best_value, best_set = value, D

    elapsed = time.perf_counter() - start
    logger.debug(f"Differential search examined {examined} subsets in {elapsed:.3f}s")
    return ExactResult(value=best_value, witness=frozenset(best_set), elapsed=elapsed)


def closed_form(kind: Union[ClosedFormKind, str], n: int) -> int:
    """ceil(2n/3), valid for paths (n >= 1) and cycles (n >= 3)"""
    kind = ClosedFormKind(kind)
    minimum = 1 if kind is ClosedFormKind.PATH else 3
    if n < minimum:
        raise BadOrderError(f"{kind.value} needs n >= {minimum}, got {n}")
    return (2 * n + 2) // 3


def check_gallai(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> bool:
    isolated = [v for v in g.vertices() if not g.adjacency[v]]
    if isolated:
        raise IsolatedVertexError(f"isolated vertices: {isolated}")
    gamma = gamma_r_exact(g, limit=limit).value
    differential = differential_exact(g, limit=limit).value
    return gamma + differential == g.n
