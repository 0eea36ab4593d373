import logging
from typing import Any, Dict

from src.bound_engine import RouteLabel, TooLargeForFallbackError
from src.graph_core import Graph
from src.oracle import gamma_r_exact
from src.routes.base_route import BaseRoute, RouteResult
from src.structure import CycleProfile

logger = logging.getLogger("routes.oracle")


class OracleRoute(BaseRoute):
    """Exact minimum-weight RDF for graphs the constructive routes do not finish"""

    @property
    def label(self) -> RouteLabel:
        return RouteLabel.ORACLE

    @property
    def limit(self) -> int:
        return self.config.get("limit", self.settings.oracle_limit)

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        limit = config.get("limit")
        if limit is not None and (not isinstance(limit, int) or limit <= 0):
            raise ValueError("'limit' must be a positive integer")
        return config

    def applies(self, profile: CycleProfile) -> bool:
        return True

    def build(self, g: Graph, k: int, profile: CycleProfile = None) -> RouteResult:
        if g.n > self.limit:
            raise TooLargeForFallbackError(
                f"exact fallback needed for n={g.n}, but the oracle limit is {self.limit}"
            )
        result = gamma_r_exact(g, self.limit)
        logger.info(f"Exact optimum {result.value} in {result.elapsed:.2f}s")
        return RouteResult(label=self.label, witness=result.witness,
                           steps=(f"exact search, optimum {result.value}",))
