import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from src.assembly import Assembly
from src.bound_engine import RouteLabel
from src.constructors import (
    ConstructionError,
    Twos,
    chordal_ear_twos,
    gadget_twos,
    identify_twos,
    rotation_cycle_twos,
)
from src.graph_core import Graph, VertexCycle
from src.routes.base_route import BaseRoute, RouteError, RouteResult
from src.structure import Attachment, AttachmentKind, CycleProfile, iter_attachments

logger = logging.getLogger("routes.two_cycle")


@dataclass(frozen=True)
class _Seed:
    vertices: Sequence[int]
    twos: Twos
    note: str


class TwoCycleRoute(BaseRoute):
    """Every bad cycle is 2 mod 3 and no two are disjoint.

    A chorded cycle is preferred, then the shortest. The seed joins the cycle
    with one attachment so that the excess stays at one; if no attachment
    fits, the rotation triple on the cycle alone costs two.
    """

    @property
    def label(self) -> RouteLabel:
        return RouteLabel.TH3

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        self._check_bool(config, "enabled")
        self._check_bool(config, "allow_rotation_excess")
        return config

    def applies(self, profile: CycleProfile) -> bool:
        return not profile.has_disjoint_pair and not profile.zero_cycles and bool(profile.two_cycles)

    def build(self, g: Graph, k: int, profile: CycleProfile) -> RouteResult:
        cycle = min(profile.two_cycles, key=lambda c: (c.is_induced_in(g), len(c), c.vertices))
        budget = self.settings.search_budget

        seed = None
        if len(cycle) < g.n:
            seed = self._seed(g, cycle, budget)
        if seed is not None:
            assembly = Assembly(g, excess=1)
            assembly.place(seed.vertices, seed.twos, seed.note)
        else:
            if not self.config.get("allow_rotation_excess", True):
                raise RouteError("no attachment joins the cycle at excess one")
            if g.n < 6 * k + 11:
                raise RouteError(f"rotation triple needs n >= {6 * k + 11}, got {g.n}")
            assembly = Assembly(g, excess=2)
            assembly.place(list(cycle), rotation_cycle_twos(cycle), f"rotation triple on C{len(cycle)}")

        assembly.absorb_all(budget)
        return self.finish(assembly)

    def _seed(self, g: Graph, cycle: VertexCycle, budget: int) -> Optional[_Seed]:
        for attachment in iter_attachments(g, cycle.vertex_set(), budget):
            seed = self._gadget_seed(cycle, attachment) or self._ear_seed(cycle, attachment)
            if seed is not None:
                logger.info(f"Seed: {seed.note}")
                return seed
        logger.info("No attachment joins the cycle at excess one")
        return None

    @staticmethod
    def _gadget_seed(cycle: VertexCycle, attachment: Attachment) -> Optional[_Seed]:
        if attachment.kind is AttachmentKind.EAR or attachment.cycle.residue != 1:
            return None
        u = attachment.anchors[0]
        sequence = list(cycle.starting_at(u)[1:]) + [u] + list(attachment.path)
        return _Seed(sequence, gadget_twos(sequence, len(attachment.cycle)),
                     f"C{len(cycle)} with a pendant C{len(attachment.cycle)} at {u}")

    @staticmethod
    def _ear_seed(cycle: VertexCycle, attachment: Attachment) -> Optional[_Seed]:
        if attachment.kind is not AttachmentKind.EAR:
            return None
        path = list(attachment.path)
        shared = sorted(set(attachment.anchors) & set(attachment.far_anchors))
        if shared and len(path) >= 2:
            x = shared[0]
            first = cycle.starting_at(x)
            return _Seed(list(first) + path, identify_twos(first, [x] + path),
                         f"C{len(cycle)} and C{len(path) + 1} sharing {x}")

        for u in attachment.anchors:
            for v in attachment.far_anchors:
                if u == v:
                    continue
                for x1, xj, ear in ((u, v, path), (v, u, path[::-1])):
                    for order in _orientations(cycle, x1):
                        twos = _try_chordal(order, ear, order.index(xj) + 1)
                        if twos is not None:
                            return _Seed(list(order) + ear, twos,
                                         f"C{len(cycle)} with an ear of length {len(ear)} from {x1} to {xj}")
        return None


def _orientations(cycle: VertexCycle, start: int) -> List[Sequence[int]]:
    forward = cycle.starting_at(start)
    return [forward, (start,) + tuple(reversed(forward[1:]))]


def _try_chordal(order: Sequence[int], ear: List[int], j: int) -> Optional[Twos]:
    try:
        return chordal_ear_twos(order, ear, j, strict=False)
    except ConstructionError:
        return None
