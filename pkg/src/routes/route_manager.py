import logging
from typing import Any, Dict, List, Optional, Type

from src.assembly import AssemblyError
from src.bound_engine import BoundViolatedError, RouteLabel, within_bound
from src.constructors import ConstructionError
from src.graph_core import Graph
from src.routes.base_route import BaseRoute, RouteError, RouteResult
from src.routes.cycle_free_route import CycleFreeRoute
from src.routes.decomposition_route import DecompositionRoute
from src.routes.oracle_route import OracleRoute
from src.routes.two_cycle_route import TwoCycleRoute
from src.routes.zero_cycle_route import ZeroCycleRoute
from src.settings import Settings
from src.structure import CycleProfile, SearchBudgetExceededError, StructureError, cycle_profile

logger = logging.getLogger("route_manager")


class RouteManager:
    def __init__(self, settings: Optional[Settings] = None):
        """Register the routes listed in the settings, in order

        Args:
            settings: loaded settings; the built-in defaults when omitted
        """
        self.settings = settings or Settings()
        self.routes: Dict[str, BaseRoute] = {}
        for config in self.settings.routes:
            self._register_route(config)

    @staticmethod
    def _class_name_to_type(class_name: str) -> Optional[Type[BaseRoute]]:
        if class_name == "th1":
            return CycleFreeRoute
        elif class_name == "th2":
            return ZeroCycleRoute
        elif class_name == "th3":
            return TwoCycleRoute
        elif class_name == "main":
            return DecompositionRoute
        elif class_name == "oracle":
            return OracleRoute

        return None

    def _register_route(self, config: Dict[str, Any]) -> None:
        """
        Create and register a route from its config entry

        Args:
            config: dictionary with the route name and its options
        """
        try:
            if "name" not in config:
                logging.error(f"Missing 'name' in route config: {config}")
                return

            name = config["name"]
            route_class = self._class_name_to_type(name)

            if route_class is None:
                logging.error(f"Unknown route type: {name}")
                return

            self.routes[name] = route_class(config, self.settings)
        except Exception as e:
            logging.error(f"Failed to initialize route: {e}")

    def list_routes(self) -> List[str]:
        """Log every registered route and whether it is enabled"""
        logging.info("\nAVAILABLE ROUTES:")
        lines = []
        for name, route in self.routes.items():
            status = "✅ Enabled" if route.enabled else "❌ Disabled"
            lines.append(f"- {name} ({route.label.value}): {status}")
            logging.info(lines[-1])
        return lines

    def select(self, profile: CycleProfile) -> Optional[BaseRoute]:
        """First enabled constructive route whose case covers the profile"""
        for route in self.routes.values():
            if route.label is RouteLabel.ORACLE or not route.enabled:
                continue
            if route.applies(profile):
                return route
        return None

    def _oracle(self) -> OracleRoute:
        route = self.routes.get("oracle")
        if isinstance(route, OracleRoute) and route.enabled:
            return route
        return OracleRoute({"name": "oracle"}, self.settings)

    def construct(self, g: Graph, k: int) -> RouteResult:
        """Run the route for the graph's case, falling back to the exact oracle"""
        try:
            profile = cycle_profile(g, self.settings.search_budget)
        except SearchBudgetExceededError as e:
            logger.warning(f"⚠️ Cycle search gave up ({e}), using the exact oracle")
            return self._oracle().build(g, k)

        route = self.select(profile)
        if route is None:
            logger.warning("⚠️ No constructive route applies, using the exact oracle")
            return self._oracle().build(g, k, profile)

        logger.info(f"Route {route.label.value} selected "
                    f"({len(profile.bad_cycles)} bad cycle(s), disjoint pair: {profile.has_disjoint_pair})")
        try:
            result = route.run(g, k, profile)
        except (ConstructionError, StructureError, AssemblyError, RouteError) as e:
            logger.warning(f"⚠️ {route.label.value} could not finish: {e}. Using the exact oracle")
            return self._oracle().build(g, k, profile)

        weight = result.witness.weight
        if not within_bound(weight, g.n, k):
            logger.error(f"❌ {route.label.value} witness weighs {weight}, over the bound")
            raise BoundViolatedError(f"{route.label.value} witness weighs {weight}, over the bound", g)
        return result
