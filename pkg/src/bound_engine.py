"""Certified upper bounds on the Roman domination number.

For a connected graph of order n >= 6k+9 with minimum degree 2 and no induced
C_5, C_8, ..., C_{3k+2}, the engine builds three Roman dominating functions
of total weight at most 3(4k+8)n/(6k+11). The lightest of them is the
witness. All comparisons are cross-multiplied integers.

Routes that end at total weight 2n+1 always fit: 3(4k+8)n/(6k+11) >= 2n+1
reduces to 2n >= 6k+11, which n >= 6k+9 gives. Total weight 2n+2 needs
n >= 6k+11, so routes producing it check that first.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.assembly import Assembly
from src.constructors import (
    AnchoredTriple,
    cycle_twos,
    gadget_twos,
    label_triple,
    pendant_twos,
    star_twos,
)
from src.graph_core import Graph, VertexCycle, VertexPath
from src.helpers import fraction_from_dict, fraction_to_dict
from src.rdf_core import RomanFunction, is_rdf
from src.settings import Settings
from src.structure import (
    AttachmentKind,
    ComponentClass,
    ComponentTag,
    HypothesisUnmetError,
    TailedArm,
    check_hypotheses,
    iter_attachments,
)

logger = logging.getLogger("bound_engine")


class EngineError(Exception):
    """Base exception for the bound engine"""
    pass


class NotStrongClassError(EngineError):
    """Raised when a strong construction is asked for a non-strong component"""
    pass


class WrongClassError(EngineError):
    """Raised when a non-strong construction is asked for an unsupported component"""
    pass


class InvalidWitnessError(EngineError):
    """Raised when a certificate's witness does not re-validate"""
    pass


class BoundViolatedError(EngineError):
    """Raised when a witness exceeds the bound; carries the graph as an edge list"""

    def __init__(self, message: str, graph: Graph):
        super().__init__(message)
        self.graph = graph
        self.graph_dump = graph.to_edge_list()


class TooLargeForFallbackError(EngineError):
    """Raised when the exact fallback is needed but the graph is over the oracle limit"""
    pass


class RouteLabel(str, Enum):
    TH1 = "Th1"
    TH2 = "Th2"
    TH3 = "Th3"
    MAIN = "MainDecomposition"
    ORACLE = "OracleFallback"


def bound_terms(n: int, k: int) -> Tuple[int, int]:
    """(4k+8)n and 6k+11, the unreduced bound"""
    return (4 * k + 8) * n, 6 * k + 11


def within_bound(weight: int, n: int, k: int) -> bool:
    num, den = bound_terms(n, k)
    return weight * den <= num


def differential_ok(weight: int, n: int, k: int) -> bool:
    return (n - weight) * (6 * k + 11) >= (2 * k + 3) * n


@dataclass(frozen=True)
class BoundCertificate:
    k: int
    n: int
    witness: RomanFunction
    witness_weight: int
    route: RouteLabel
    checks: Dict[str, bool] = field(default_factory=dict)
    steps: Tuple[str, ...] = ()

    @property
    def bound_num(self) -> int:
        return bound_terms(self.n, self.k)[0]

    @property
    def bound_den(self) -> int:
        return bound_terms(self.n, self.k)[1]

    @property
    def bound(self) -> Fraction:
        return Fraction(self.bound_num, self.bound_den)

    @property
    def differential_lower(self) -> Fraction:
        return Fraction((2 * self.k + 3) * self.n, 6 * self.k + 11)

    @property
    def tight(self) -> bool:
        return self.witness_weight * self.bound_den == self.bound_num

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "route": self.route.value,
            "bound": fraction_to_dict(self.bound),
            "witness": list(self.witness.values),
            "witness_weight": self.witness_weight,
            "differential_lower": fraction_to_dict(self.differential_lower),
            "tight": self.tight,
            "checks": dict(self.checks),
            "steps": list(self.steps),
        }

    @classmethod
    def from_dict(cls, data: dict, host: Graph) -> "BoundCertificate":
        cert = cls(
            k=data["k"],
            n=data["n"],
            witness=RomanFunction(host, tuple(data["witness"])),
            witness_weight=data["witness_weight"],
            route=RouteLabel(data["route"]),
            checks=dict(data.get("checks", {})),
            steps=tuple(data.get("steps", ())),
        )
        if cert.bound != fraction_from_dict(data["bound"]):
            raise InvalidWitnessError("stored bound does not match k and n")
        return cert


# ---------------------------------------------------------------------------
# Component triples
# ---------------------------------------------------------------------------

def _arms(cls: ComponentClass) -> List[TailedArm]:
    """Near cycles as tail-less arms followed by the tailed arms"""
    return [TailedArm(cycle=c, tail=VertexPath(())) for c in cls.near_cycles] + list(cls.tailed)


def _arm_sequence(arm: TailedArm) -> List[int]:
    """y_l..y_1 x_1..x_m, read outward from the special vertex"""
    return list(reversed(arm.tail.vertices)) + list(arm.cycle.vertices)


def _place_pendant(assembly: Assembly, anchor: int, sequence: List[int], cycle_length: int, note: str) -> None:
    components = assembly.strong_components(anchor)
    if not components:
        raise WrongClassError(f"anchor {anchor} is not strong")
    assembly.place(sequence, pendant_twos(components[0], sequence, cycle_length), note)


def _f02_sequence(cycle_two: VertexCycle, connector, other: VertexCycle) -> List[int]:
    return list(cycle_two.vertices[1:]) + [cycle_two[0]] + list(connector.interior) + list(other.vertices)


def triple_for_strong_component(h: Graph, cls: ComponentClass, k: int) -> AnchoredTriple:
    """All-strong triple for F0, F02, F3 and B(r, s) with s <= 2.

    Weights: 2n for F0, 2n+1 for F02, 2n+3 for F3 and 2n+r+s for B(r, s).
    """
    if not cls.is_strong:
        raise NotStrongClassError(f"{cls.label()} is not a strong component class")
    assembly = Assembly(h)
    n = h.n

    if cls.tag is ComponentTag.F0:
        cycle = list(cls.cycles[0])
        assembly.place(cycle, cycle_twos(cycle), f"C{len(cycle)}")
        claim = 2 * n
    elif cls.tag is ComponentTag.F02:
        sequence = _f02_sequence(cls.cycles[0], cls.connectors[0], cls.cycles[1])
        assembly.place(sequence, gadget_twos(sequence, len(cls.cycles[1])), "two-cycle gadget")
        claim = 2 * n + 1
    elif cls.tag is ComponentTag.F3:
        _build_f3(assembly, cls)
        claim = 2 * n + 3
    else:
        _build_brs_strong(assembly, cls)
        claim = 2 * n + cls.r + cls.s

    triple = assembly.to_triple()
    return AnchoredTriple(graph=h, triple=triple, strong_claimed=frozenset(h.vertices()), weight_claimed=claim)


def _build_f3(assembly: Assembly, cls: ComponentClass) -> None:
    two_a, zero, two_b, two_c = cls.cycles
    p02, bridge, link = cls.connectors
    sequence = _f02_sequence(two_a, p02, zero)
    assembly.place(sequence, gadget_twos(sequence, len(zero)), "F02 gadget")

    end = link.last
    near, far = (two_b, two_c) if end in two_b.vertex_set() else (two_c, two_b)
    _place_pendant(assembly, link.first, list(link.interior) + list(near.starting_at(end)), len(near),
                   "first F22 cycle through the link")

    anchor, start = (bridge.first, bridge.last) if bridge.first in near.vertex_set() else (bridge.last, bridge.first)
    _place_pendant(assembly, anchor, list(far.starting_at(start)), len(far), "second F22 cycle")


def _build_brs_strong(assembly: Assembly, cls: ComponentClass) -> None:
    hub = cls.special_vertex
    arms = _arms(cls)
    first, second = arms[0], arms[1]
    sequence = (list(first.cycle.vertices[1:]) + [first.cycle[0]] + list(first.tail.vertices)
                + [hub] + _arm_sequence(second))
    assembly.place(sequence, gadget_twos(sequence, len(second.cycle)), "two-cycle gadget through the hub")
    for arm in arms[2:]:
        _place_pendant(assembly, hub, _arm_sequence(arm), len(arm.cycle), "arm at the hub")


def _f22_single_twos(cls: ComponentClass) -> List[set]:
    first, second = cls.cycles
    heavy = {v for i, v in enumerate(first.vertices, start=1) if i % 3 == 1}
    heavy |= {v for i, v in enumerate(second.vertices, start=1) if i % 3 == 0}
    return [set(heavy), set(heavy), set(heavy)]


def triple_for_nonstrong_component(h: Graph, cls: ComponentClass, k: int, all_strong: bool = False) -> AnchoredTriple:
    """Triples for B(r, s) with s >= 3 and for F22, possibly carrying a pendant 1 mod 3 cycle.

    B(r, s): weight 2n - s + 4 + r; the special vertex and the tailed arms are strong.
    Bare F22: one function used three times, weight 2n+1, or with ``all_strong``
    the all-strong gadget of weight 2n+2. F22 with a pendant (tailed) cycle of
    length 1 mod 3: weight 2n+2, everything strong except the cycle's last vertex.
    """
    if cls.tag is ComponentTag.BRS and cls.s >= 3:
        hub = cls.special_vertex
        assembly = Assembly(h)
        near = [list(c.vertices) for c in cls.near_cycles]
        assembly.place([hub] + [v for c in near for v in c], star_twos(hub, near), "star of near cycles")
        strong = {hub}
        for arm in cls.tailed:
            _place_pendant(assembly, hub, _arm_sequence(arm), len(arm.cycle), "tailed arm at the hub")
            strong |= set(arm.cycle) | set(arm.tail)
        triple = assembly.to_triple()
        strong |= triple.strong_set
        return AnchoredTriple(h, triple, frozenset(strong), 2 * h.n - cls.s + 4 + cls.r)

    if cls.tag is not ComponentTag.F22:
        raise WrongClassError(f"no non-strong construction for {cls.label()}")

    core = cls.cycles[0].vertex_set() | cls.cycles[1].vertex_set()
    if len(core) == h.n:
        if all_strong:
            sequence = _f02_sequence(cls.cycles[0], cls.connectors[0], cls.cycles[1])
            triple = label_triple(h, gadget_twos(sequence, len(cls.cycles[1])))
            return AnchoredTriple(h, triple, frozenset(h.vertices()), 2 * h.n + 2)
        triple = label_triple(h, _f22_single_twos(cls))
        return AnchoredTriple(h, triple, triple.strong_set, 2 * h.n + 1)

    return _f22_with_pendant(h, cls, core)


def _f22_with_pendant(h: Graph, cls: ComponentClass, core: FrozenSet[int]) -> AnchoredTriple:
    for attachment in iter_attachments(h, core):
        if attachment.kind is AttachmentKind.EAR or attachment.cycle.residue != 1:
            continue
        if len(core) + len(attachment.path) != h.n:
            continue
        u = attachment.anchors[0]
        host_cycle, other = cls.cycles if u in cls.cycles[0].vertex_set() else cls.cycles[::-1]
        assembly = Assembly(h)
        rotated = host_cycle.starting_at(u)
        sequence = list(rotated[1:]) + [u] + list(attachment.path)
        assembly.place(sequence, gadget_twos(sequence, len(attachment.cycle)), "gadget with the pendant cycle")

        bridge = cls.connectors[0]
        anchor, start = (bridge.first, bridge.last) if bridge.first in host_cycle.vertex_set() else (bridge.last, bridge.first)
        _place_pendant(assembly, anchor, list(other.starting_at(start)), len(other), "second F22 cycle")
        triple = assembly.to_triple()
        weak = attachment.path[-1]
        return AnchoredTriple(h, triple, frozenset(v for v in h.vertices() if v != weak), 2 * h.n + 2)
    raise WrongClassError("extra vertices do not form a pendant cycle of length 1 mod 3")


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

def _certificate(g: Graph, k: int, route: RouteLabel, witness: RomanFunction, steps: Tuple[str, ...]) -> BoundCertificate:
    weight = witness.weight
    checks = {
        "rdf_valid": is_rdf(g, witness),
        "bound_ok": within_bound(weight, g.n, k),
        "gallai_ok": differential_ok(weight, g.n, k),
    }
    return BoundCertificate(k=k, n=g.n, witness=witness, witness_weight=weight, route=route,
                            checks=checks, steps=steps)


def construct_bound_triple(g: Graph, k: int, settings: Optional[Settings] = None) -> BoundCertificate:
    # routes import this module
    from src.routes import RouteManager

    report = check_hypotheses(g, k)
    if not report.passes:
        raise HypothesisUnmetError(
            f"hypotheses fail for k={k}: n_ok={report.n_ok}, delta_ok={report.delta_ok}, "
            f"{len(report.forbidden_found)} forbidden cycle(s)"
        )
    if not g.is_connected():
        raise HypothesisUnmetError("the graph must be connected")

    manager = RouteManager(settings or Settings())
    result = manager.construct(g, k)
    cert = _certificate(g, k, result.label, result.witness, result.steps)
    certify_bound(g, k, cert)
    logger.info(f"✅ Bound certified via {cert.route.value}: weight {cert.witness_weight}, "
                f"bound {cert.bound_num}/{cert.bound_den}")
    return cert


def certify_bound(g: Graph, k: int, cert: BoundCertificate) -> bool:
    """Re-validate the witness and both inequalities from scratch"""
    if cert.k != k or cert.n != g.n:
        raise InvalidWitnessError(f"certificate is for k={cert.k}, n={cert.n}")
    if cert.witness.host != g:
        raise InvalidWitnessError("witness was built for another graph")
    if not is_rdf(g, cert.witness):
        raise InvalidWitnessError("witness is not a Roman dominating function")
    if cert.witness.weight != cert.witness_weight:
        raise InvalidWitnessError(
            f"witness weighs {cert.witness.weight}, certificate says {cert.witness_weight}"
        )
    if not within_bound(cert.witness_weight, g.n, k):
        raise BoundViolatedError(
            f"weight {cert.witness_weight} exceeds {cert.bound_num}/{cert.bound_den}", g
        )
    if not differential_ok(cert.witness_weight, g.n, k):
        raise BoundViolatedError("differential falls below (2k+3)n/(6k+11)", g)
    return True
