"""Parametric families of finite set systems, keyed by name, for density probes."""

from __future__ import annotations

from .decision import residue_family, threshold_family
from .graphs import half_graph, neighborhood_system
from .setsystem import from_masks, powerset_system

GENERATORS = {
    "empty": lambda n: from_masks(n, []),
    "singleton": lambda n: from_masks(n, [1] if n else [0]),
    "threshold": threshold_family,
    "residue": residue_family,
    "half-graph": lambda k: neighborhood_system(half_graph(k)),
    "powerset": powerset_system,
}
