from .route_manager import RouteManager
from .base_route import BaseRoute, RouteError, RouteNotApplicableError, RouteResult
from .cycle_free_route import CycleFreeRoute
from .zero_cycle_route import ZeroCycleRoute
from .two_cycle_route import TwoCycleRoute
from .decomposition_route import DecompositionRoute
from .oracle_route import OracleRoute

__all__ = [
    'RouteManager',
    'BaseRoute',
    'RouteError',
    'RouteNotApplicableError',
    'RouteResult',
    'CycleFreeRoute',
    'ZeroCycleRoute',
    'TwoCycleRoute',
    'DecompositionRoute',
    'OracleRoute'
]
