import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from src.assembly import Assembly
from src.bound_engine import RouteLabel
from src.graph_core import Graph
from src.rdf_core import RdfTriple, RomanFunction, validate_triple
from src.settings import Settings
from src.structure import CycleProfile


class RouteError(Exception):
    """Raised when a route cannot finish its construction on the given graph"""
    pass


class RouteNotApplicableError(RouteError):
    """Raised when a route is asked to build on a graph outside its case"""
    pass


@dataclass(frozen=True)
class RouteResult:
    label: RouteLabel
    witness: RomanFunction
    triple: Optional[RdfTriple] = None
    steps: Tuple[str, ...] = ()


class BaseRoute(ABC):
    def __init__(self, config: Dict[str, Any], settings: Settings):
        try:
            self.settings = settings
            # Route options from the "routes" list of the config file
            self.config = self.validate_config(config)
        except Exception as e:
            logging.error("Could not initialize the route")
            raise e

    @property
    @abstractmethod
    def label(self) -> RouteLabel:
        pass

    @property
    def enabled(self) -> bool:
        return bool(self.config.get("enabled", True))

    @abstractmethod
    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validate the route's entry from the config file

        Args:
            config: dictionary holding the route name and its options

        Returns:
            Dict[str, Any]: Returns the config if valid

        Raises:
            ValueError if an option has the wrong type
        """

    @abstractmethod
    def applies(self, profile: CycleProfile) -> bool:
        """
        Decide from the bad cycles of the graph whether this route handles it.

        Args:
            profile: the bad cycles and whether two of them are disjoint

        Returns:
            bool: True if the route's case covers the graph
        """
        pass

    @abstractmethod
    def build(self, g: Graph, k: int, profile: CycleProfile) -> RouteResult:
        """
        Build a Roman dominating function on ``g`` within the bound for ``k``.

        Args:
            g: connected host graph meeting the hypotheses
            k: the forbidden-cycle parameter
            profile: the cycle profile that selected this route

        Returns:
            RouteResult: the witness and, for constructive routes, the full triple

        Raises:
            RouteError, ConstructionError, StructureError or AssemblyError when
            the construction cannot be completed
        """
        pass

    @staticmethod
    def _check_bool(config: Dict[str, Any], key: str) -> None:
        if key in config and not isinstance(config[key], bool):
            raise ValueError(f"'{key}' must be true or false")

    def finish(self, assembly: Assembly) -> RouteResult:
        """Validate the assembled triple and keep its lightest function"""
        triple = assembly.to_triple()
        report = validate_triple(assembly.graph, triple)
        if not report.all_valid:
            bad = [i + 1 for i, ok in enumerate(report.valid) if not ok]
            raise RouteError(f"{self.label.value} produced invalid function(s) {bad}")
        logging.getLogger("routes").debug(
            f"{self.label.value}: weights {report.weights}, total {report.weight_total}"
        )
        return RouteResult(
            label=self.label,
            witness=triple.components[report.min_index],
            triple=triple,
            steps=tuple(step.note for step in assembly.steps),
        )

    def run(self, g: Graph, k: int, profile: CycleProfile) -> RouteResult:
        """Build after checking that the profile falls in this route's case"""
        if not self.applies(profile):
            raise RouteNotApplicableError(f"{self.label.value} does not cover this graph")
        return self.build(g, k, profile)
