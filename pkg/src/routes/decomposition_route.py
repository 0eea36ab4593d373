import logging
from typing import Any, Dict

from src.assembly import Assembly
from src.bound_engine import (
    RouteLabel,
    triple_for_nonstrong_component,
    triple_for_strong_component,
)
from src.constructors import AnchoredTriple
from src.graph_core import Graph
from src.rdf_core import validate_triple
from src.routes.base_route import BaseRoute, RouteError, RouteResult
from src.structure import (
    ComponentTag,
    CycleProfile,
    DecompositionComponent,
    disjoint_bad_cycle_decomposition,
)

logger = logging.getLogger("routes.decomposition")


class DecompositionRoute(BaseRoute):
    """Two bad cycles are disjoint: label each decomposition component, then grow through G1"""

    @property
    def label(self) -> RouteLabel:
        return RouteLabel.MAIN

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        self._check_bool(config, "enabled")
        self._check_bool(config, "prefer_strong_f22")
        return config

    def applies(self, profile: CycleProfile) -> bool:
        return profile.has_disjoint_pair

    def build(self, g: Graph, k: int, profile: CycleProfile) -> RouteResult:
        decomposition = disjoint_bad_cycle_decomposition(
            g, self.settings.search_budget, self.settings.refine_iterations
        )
        assembly = Assembly(g)
        for component in decomposition.g2_components:
            anchored = self._component_triple(g, k, component)
            assembly.place_triple(component.id_map, anchored.triple,
                                  f"{component.cls.label()} on {len(component.vertices)} vertices", check=False)
        assembly.check_invariants()
        if not assembly.complete:
            assembly.absorb_all(self.settings.search_budget)
        return self.finish(assembly)

    def _component_triple(self, g: Graph, k: int, component: DecompositionComponent) -> AnchoredTriple:
        h, cls = component.graph, component.cls
        if cls.is_strong:
            anchored = triple_for_strong_component(h, cls, k)
        else:
            all_strong = cls.tag is ComponentTag.F22 and bool(self.config.get("prefer_strong_f22", False))
            anchored = triple_for_nonstrong_component(h, cls, k, all_strong=all_strong)
            if self._weak_touch_outside(g, component, anchored):
                if cls.tag is not ComponentTag.F22 or all_strong:
                    raise RouteError(f"a non-strong vertex of {cls.label()} has a neighbour outside it")
                logger.info("F22 has a weak vertex on the frontier, switching to the all-strong triple")
                anchored = triple_for_nonstrong_component(h, cls, k, all_strong=True)

        report = validate_triple(h, anchored.triple)
        if not report.all_valid:
            raise RouteError(f"{cls.label()} triple is not valid on its component")
        if report.weight_total > anchored.weight_claimed:
            raise RouteError(
                f"{cls.label()} triple weighs {report.weight_total}, expected at most {anchored.weight_claimed}"
            )
        return anchored

    @staticmethod
    def _weak_touch_outside(g: Graph, component: DecompositionComponent, anchored: AnchoredTriple) -> bool:
        for local in component.graph.vertices():
            if anchored.strong_in(local):
                continue
            host = component.id_map[local]
            if any(w not in component.vertices for w in g.adjacency[host]):
                return True
        return False
