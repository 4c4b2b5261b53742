"""Thicket dimension and friends for finite set systems, graphs and decision trees."""

__version__ = "0.1.0"

from .setsystem import (  # noqa: E402
    ParseError,
    SetSystem,
    SetSystemError,
    build_system,
    column_masks,
    dualize,
    from_masks,
    parse_incidence,
    powerset_system,
    restrict,
    singletons_system,
    union_systems,
)
from .trees import LabeledTree, build_balanced, is_full, is_realized, leaf_regions, realized_leaf_count, to_dot, trace  # noqa: E402
from .complexity import (  # noqa: E402
    BudgetExceeded,
    ConsistencyError,
    dual_dim,
    phi,
    rho,
    rho_bruteforce,
    sauer_shelah_report,
    sigma,
    thicket_dim,
    thicket_dim_bruteforce,
    vc_dim,
)
from .ladders import Ladder, is_ladder, ladder_to_tree, max_ladder, strictify  # noqa: E402
from .graphs import Graph, eh_extract, half_graph, neighborhood_system, type_tree  # noqa: E402
from .decision import ComputationInstance, compose, computes, min_decision_depth  # noqa: E402
