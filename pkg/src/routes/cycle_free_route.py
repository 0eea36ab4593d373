import logging
from typing import Any, Dict

from src.assembly import Assembly
from src.bound_engine import RouteLabel
from src.constructors import cycle_twos, tailed_cycle_twos
from src.graph_core import Graph, longest_path
from src.routes.base_route import BaseRoute, RouteError, RouteResult
from src.structure import CycleProfile

logger = logging.getLogger("routes.cycle_free")


class CycleFreeRoute(BaseRoute):
    """Every cycle is 1 mod 3.

    The start z_1 of a longest path has all its neighbours on the path. The
    furthest of them, z_j, closes a cycle; the rest of the path hangs off it
    as a tail. Ears and pendants then cover the graph at one unit of excess.
    """

    @property
    def label(self) -> RouteLabel:
        return RouteLabel.TH1

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        self._check_bool(config, "enabled")
        return config

    def applies(self, profile: CycleProfile) -> bool:
        return not profile.bad_cycles

    def build(self, g: Graph, k: int, profile: CycleProfile) -> RouteResult:
        q = longest_path(g).vertices
        r = len(q)
        z1 = q[0]
        j = max(i for i, v in enumerate(q, start=1) if g.has_edge(z1, v))
        if j < 3:
            raise RouteError("the start of the longest path has no neighbour past its successor")

        assembly = Assembly(g, excess=1)
        if j == r:
            cycle = list(q[1:]) + [z1]
            assembly.place(cycle, cycle_twos(cycle), f"C{r} on the longest path")
        else:
            cycle = list(reversed(q[:j]))
            tail = list(q[j:])
            assembly.place(cycle + tail, tailed_cycle_twos(cycle, tail),
                           f"C{j} with a tail of {len(tail)} on the longest path")
        logger.info(f"Seeded on a longest path of {r} vertices (z_1 reaches z_{j})")
        assembly.absorb_all(self.settings.search_budget)
        return self.finish(assembly)
