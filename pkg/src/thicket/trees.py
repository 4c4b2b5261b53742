"""Labeled binary trees addressed by binary strings.

A vertex is a string over ``"01"``; ``""`` is the root and ``v + "0"`` /
``v + "1"`` are its left / right children. Internal vertices carry an integer
label, which is a ground element (element trees) or a family index
(set-labeled trees). Going left means "the label is a member".
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from .setsystem import SetSystem


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledTree:
    vertices: frozenset[str]
    labels: Mapping[str, int]
    canonical: bool = True

    def __post_init__(self):
        if "" not in self.vertices:
            raise TreeError("tree must contain the root")
        for v in self.vertices:
            if v and v[:-1] not in self.vertices:
                raise TreeError(f"vertex {v!r} has no parent")
            if set(v) - {"0", "1"}:
                raise TreeError(f"bad vertex string {v!r}")
        for v in self.vertices:
            kids = (v + "0" in self.vertices) + (v + "1" in self.vertices)
            if self.canonical and kids == 1:
                raise TreeError(f"vertex {v!r} has exactly one child")
            if kids and v not in self.labels:
                raise TreeError(f"internal vertex {v!r} is unlabeled")
            if not kids and v in self.labels:
                raise TreeError(f"leaf {v!r} carries a label")
        extra = set(self.labels) - self.vertices
        if extra:
            raise TreeError(f"labels on non-vertices: {sorted(extra)}")

    @classmethod
    def from_labels(cls, labels: Mapping[str, int]) -> LabeledTree:
        """Canonical tree whose internal vertices are exactly the keys of ``labels``."""
        verts = {""}
        for v in labels:
            verts.add(v)
            verts.add(v + "0")
            verts.add(v + "1")
        return cls(frozenset(verts), dict(labels))

    @classmethod
    def leaf(cls) -> LabeledTree:
        return cls(frozenset({""}), {})

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        # no leaf is a prefix of another, so lexicographic order is left-to-right order
        return tuple(sorted(v for v in self.vertices if v not in self.labels))

    @property
    def depth(self) -> int:
        return max(len(v) for v in self.vertices)

    def is_leaf(self, v: str) -> bool:
        return v in self.vertices and v not in self.labels

    def is_balanced(self) -> bool:
        d = self.depth
        return len(self.vertices) == (1 << (d + 1)) - 1

    def subtree(self, v: str) -> LabeledTree:
        k = len(v)
        verts = frozenset(u[k:] for u in self.vertices if u.startswith(v))
        return LabeledTree(verts, {u[k:]: x for u, x in self.labels.items() if u.startswith(v)}, self.canonical)

    def path_condition(self, v: str) -> tuple[int, int]:
        """Bitmasks (must contain, must exclude) over labels of the strict ancestors of ``v``."""
        inside = outside = 0
        for i in range(len(v)):
            x = self.labels[v[:i]]
            if v[i] == "0":
                inside |= 1 << x
            else:
                outside |= 1 << x
        return inside, outside


def build_balanced(depth: int, labeling: Mapping[str, int]) -> LabeledTree:
    labels = {}
    for d in range(depth):
        for i in range(1 << d):
            v = format(i, f"0{d}b") if d else ""
            if v not in labeling:
                raise TreeError(f"missing label for vertex {v!r}")
            labels[v] = labeling[v]
    return LabeledTree.from_labels(labels)


def trace(tree: LabeledTree, subset: int) -> str | None:
    """Leaf that ``subset`` (a bitmask) is a solution to.

    ``None`` only for non-canonical trees, when the required child is absent.
    """
    v = ""
    while v in tree.labels:
        v += "0" if (subset >> tree.labels[v]) & 1 else "1"
        if v not in tree.vertices:
            return None
    return v


def is_realized(tree: LabeledTree, leaf: str, system: SetSystem) -> int | None:
    """Lowest family index solving ``leaf``, or None."""
    if not tree.is_leaf(leaf):
        raise TreeError(f"{leaf!r} is not a leaf")
    inside, outside = tree.path_condition(leaf)
    for i, s in enumerate(system.family):
        if s & inside == inside and s & outside == 0:
            return i
    return None


def realized_leaf_count(tree: LabeledTree, system: SetSystem) -> int:
    return sum(is_realized(tree, v, system) is not None for v in tree.leaves)


def is_full(tree: LabeledTree, system: SetSystem) -> bool:
    return realized_leaf_count(tree, system) == len(tree.leaves)


def realization_certificate(tree: LabeledTree, system: SetSystem) -> dict[str, int | None]:
    return {v: is_realized(tree, v, system) for v in tree.leaves}


@dataclass(frozen=True)
class LeafRegion:
    leaf: str
    region: int


def leaf_regions(tree: LabeledTree, system: SetSystem, reference: int) -> list[LeafRegion]:
    """Regions ``A_v`` of a set-labeled tree, in left-to-right leaf order."""
    regions = {"": reference}
    for v in sorted(tree.vertices, key=len):
        if v in tree.labels:
            f = system.family[tree.labels[v]]
            regions[v + "0"] = regions[v] & f
            regions[v + "1"] = regions[v] & ~f
    return [LeafRegion(v, regions[v]) for v in tree.leaves]


def to_dot(tree: LabeledTree, system: SetSystem | None = None, names=None, title: str = "T") -> str:
    """Graphviz source; with ``system`` given, realized leaves are drawn filled."""
    realized = realization_certificate(tree, system) if system is not None else {}

    def node(v: str) -> str:
        return "n_" + (v or "root")

    lines = [f"digraph {title} {{", "  node [fontname=Helvetica];"]
    for v in sorted(tree.vertices, key=lambda u: (len(u), u)):
        if v in tree.labels:
            x = tree.labels[v]
            text = names[x] if names is not None else str(x)
            lines.append(f'  {node(v)} [label="{text}", shape=ellipse];')
        else:
            filled = realized.get(v) is not None
            style = "filled" if filled else "solid"
            mark = "realized" if filled else ("unrealized" if system is not None else "")
            lines.append(f'  {node(v)} [label="{mark}", shape=circle, style={style}];')
        if v:
            side = "in" if v[-1] == "0" else "out"
            lines.append(f'  {node(v[:-1])} -> {node(v)} [label="{side}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
