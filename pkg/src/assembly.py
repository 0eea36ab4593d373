import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from src.constructors import ConstructionError, Twos, ear_twos, pendant_twos, settle_labels
from src.graph_core import Graph
from src.rdf_core import RdfTriple, RomanFunction
from src.structure import (
    DEFAULT_SEARCH_BUDGET,
    Attachment,
    AttachmentKind,
    NoAttachmentError,
    iter_attachments,
)

logger = logging.getLogger("assembly")


class AssemblyError(Exception):
    """Base exception for the running triple on the host graph"""
    pass


class InvariantViolatedError(AssemblyError):
    """Raised when a step leaves the running triple over weight or a frontier vertex weak"""
    pass


@dataclass(frozen=True)
class AssemblyStep:
    note: str
    added: Tuple[int, ...]
    covered: int
    weight: int


class Assembly:
    """Three partial labellings of one host graph, grown a piece at a time.

    After every step the covered vertices with an uncovered neighbour must be
    labelled 2 somewhere. When ``excess`` is set the total weight must also
    stay within 2 * covered + excess.
    """

    def __init__(self, graph: Graph, excess: Optional[int] = None):
        self.graph = graph
        self.excess = excess
        self.labels: List[List[Optional[int]]] = [[None] * graph.n for _ in range(3)]
        self.covered: Set[int] = set()
        self.steps: List[AssemblyStep] = []

    @property
    def weight(self) -> int:
        return sum(self.labels[c][v] for c in range(3) for v in self.covered)

    @property
    def complete(self) -> bool:
        return len(self.covered) == self.graph.n

    def strong_components(self, v: int) -> List[int]:
        return [c for c in range(3) if self.labels[c][v] == 2]

    def frontier(self) -> List[int]:
        return sorted(
            v for v in self.covered
            if any(w not in self.covered for w in self.graph.adjacency[v])
        )

    def _claim(self, vertices: Iterable[int]) -> Tuple[int, ...]:
        fresh = tuple(vertices)
        clash = [v for v in fresh if v in self.covered]
        if clash:
            raise AssemblyError(f"vertices {clash} are already covered")
        return fresh

    def place(self, vertices: Sequence[int], twos: Twos, note: str) -> AssemblyStep:
        fresh = self._claim(vertices)
        try:
            settle_labels(self.graph, self.labels, fresh, twos)
        except ConstructionError as e:
            raise AssemblyError(str(e)) from e
        return self._record(fresh, note)

    def place_triple(self, id_map: Sequence[int], triple: RdfTriple, note: str, check: bool = True) -> AssemblyStep:
        """Copy a triple built on a subgraph, local vertex i landing on ``id_map[i]``.

        Pass ``check=False`` while several components are still being laid
        down; call ``check_invariants`` once they are all in place.
        """
        fresh = self._claim(id_map)
        for c, f in enumerate(triple):
            for local, host in enumerate(id_map):
                self.labels[c][host] = f[local]
        return self._record(fresh, note, check)

    def _record(self, fresh: Tuple[int, ...], note: str, check: bool = True) -> AssemblyStep:
        self.covered.update(fresh)
        step = AssemblyStep(note=note, added=fresh, covered=len(self.covered), weight=self.weight)
        self.steps.append(step)
        logger.debug(f"{note}: +{len(fresh)} vertices, covered {step.covered}, weight {step.weight}")
        if check:
            self.check_invariants()
        return step

    def check_invariants(self) -> None:
        if self.excess is not None and self.weight > 2 * len(self.covered) + self.excess:
            raise InvariantViolatedError(
                f"weight {self.weight} exceeds 2*{len(self.covered)}+{self.excess}"
            )
        weak = [v for v in self.frontier() if not self.strong_components(v)]
        if weak:
            raise InvariantViolatedError(f"frontier vertices {weak} are not strong")

    def absorb(self, attachment: Attachment) -> AssemblyStep:
        path = list(attachment.path)
        if attachment.kind is AttachmentKind.EAR:
            u, v, a, b = self._ear_anchors(attachment)
            return self.place(path, ear_twos(path, a, b), f"ear of length {len(path)} between {u} and {v}")

        u, a = self._pendant_anchor(attachment)
        cycle_length = len(attachment.cycle)
        twos = pendant_twos(a, path, cycle_length)
        if attachment.kind is AttachmentKind.PENDANT_CYCLE:
            note = f"pendant C{cycle_length} at {u}"
        else:
            note = f"pendant tailed C{cycle_length} (tail {len(attachment.tail)}) at {u}"
        return self.place(path, twos, note)

    def _ear_anchors(self, attachment: Attachment) -> Tuple[int, int, int, int]:
        fallback = None
        for u in attachment.anchors:
            for v in attachment.far_anchors:
                for a in self.strong_components(u):
                    for b in self.strong_components(v):
                        if a != b:
                            return u, v, a, b
                        if fallback is None:
                            fallback = (u, v, a, b)
        if fallback is None:
            raise InvariantViolatedError(f"ear {list(attachment.path)} has no strong anchors")
        return fallback

    def _pendant_anchor(self, attachment: Attachment) -> Tuple[int, int]:
        for u in attachment.anchors:
            components = self.strong_components(u)
            if components:
                return u, components[0]
        raise InvariantViolatedError(f"pendant at {list(attachment.path)} has no strong anchor")

    def absorb_all(self, budget: int = DEFAULT_SEARCH_BUDGET) -> None:
        while not self.complete:
            attachment = next(iter_attachments(self.graph, self.covered, budget), None)
            if attachment is None:
                raise NoAttachmentError(f"stuck with {len(self.covered)} of {self.graph.n} vertices covered")
            self.absorb(attachment)

    def to_triple(self) -> RdfTriple:
        if not self.complete:
            raise AssemblyError(f"only {len(self.covered)} of {self.graph.n} vertices are labelled")
        return RdfTriple(*(RomanFunction(self.graph, tuple(values)) for values in self.labels))
