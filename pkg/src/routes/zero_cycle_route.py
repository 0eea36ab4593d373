from typing import Any, Dict

from src.assembly import Assembly
from src.bound_engine import RouteLabel
from src.constructors import cycle_twos
from src.graph_core import Graph
from src.routes.base_route import BaseRoute, RouteResult
from src.structure import CycleProfile


class ZeroCycleRoute(BaseRoute):
    """No two bad cycles are disjoint and one of them is 0 mod 3: seed on the shortest such cycle"""

    @property
    def label(self) -> RouteLabel:
        return RouteLabel.TH2

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        self._check_bool(config, "enabled")
        return config

    def applies(self, profile: CycleProfile) -> bool:
        return not profile.has_disjoint_pair and bool(profile.zero_cycles)

    def build(self, g: Graph, k: int, profile: CycleProfile) -> RouteResult:
        cycle = list(min(profile.zero_cycles, key=lambda c: (len(c), c.vertices)))
        assembly = Assembly(g, excess=1)
        assembly.place(cycle, cycle_twos(cycle), f"C{len(cycle)}, the shortest 0 mod 3 cycle")
        assembly.absorb_all(self.settings.search_budget)
        return self.finish(assembly)
