"""Set-labeled decision trees over truncated boxes ``[0, N)^k``.

Tuples are flattened row-major: ``(x, y)`` in ``[0, N)^2`` is ``x * N + y``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .complexity import BudgetExceeded
from .setsystem import SetSystem, from_masks, mask_of
from .trees import LabeledTree, build_balanced, leaf_regions


class CompositionError(ValueError):
    pass


@dataclass(frozen=True)
class ComputationInstance:
    label_family: SetSystem
    target: int
    reference: int

    def __post_init__(self):
        full = self.label_family.full_mask
        if self.target & ~full or self.reference & ~full:
            raise ValueError("target and reference must lie inside the ambient domain")


def computes(tree: LabeledTree, instance: ComputationInstance) -> frozenset[str] | None:
    """Leaves whose regions union to ``target ∩ reference``, or None if the tree cannot compute it."""
    g = instance.target & instance.reference
    chosen = []
    for r in leaf_regions(tree, instance.label_family, instance.reference):
        inside = r.region & g
        if inside and inside != r.region:
            return None
        if inside:
            chosen.append(r.leaf)
    return frozenset(chosen)


def compose(
    outer: LabeledTree,
    outer_family: SetSystem,
    computing_trees: Mapping[int, LabeledTree],
    inner_family: SetSystem,
    y: int,
) -> LabeledTree:
    """Substitute a computing tree for every label of ``outer``.

    ``computing_trees[g]`` must compute ``outer_family.family[g]`` over ``y``.
    Leaves of a computing tree whose region over ``y`` lies inside the computed
    set (empty regions included) receive the left subtree, the rest the right.
    """
    splits: dict[int, tuple[LabeledTree, set[str]]] = {}
    for g in set(outer.labels.values()):
        t = computing_trees.get(g)
        if t is None:
            raise CompositionError(f"no computing tree for label {g}")
        target = outer_family.family[g]
        if computes(t, ComputationInstance(inner_family, target, y)) is None:
            raise CompositionError(f"tree for label {g} does not compute its set over y")
        into_left = {r.leaf for r in leaf_regions(t, inner_family, y) if r.region & ~target == 0}
        splits[g] = (t, into_left)

    def star(v: str) -> dict[str, int]:
        if v not in outer.labels:
            return {}
        t, into_left = splits[outer.labels[v]]
        left, right = star(v + "0"), star(v + "1")
        out = dict(t.labels)
        for leaf in t.leaves:
            for u, lab in (left if leaf in into_left else right).items():
                out[leaf + u] = lab
        return out

    return LabeledTree.from_labels(star(""))


def partition_refines(fine: list[int], coarse: list[int]) -> bool:
    """Every nonempty block of ``fine`` sits inside some block of ``coarse``."""
    return all(any(b & ~c == 0 for c in coarse) for b in fine if b)


# --- label families --------------------------------------------------------------------


def threshold_family(n: int) -> SetSystem:
    """Sets {x : x <= k} for 0 <= k < n over [0, n)."""
    return from_masks(n, [(1 << (k + 1)) - 1 for k in range(n)])


def residue_family(n: int) -> SetSystem:
    masks = []
    for k in range(1, n + 1):
        for r in range(k):
            masks.append(mask_of(range(r, n, k)))
    return from_masks(n, masks)


def atomic_equality_family(n: int) -> SetSystem:
    """One-variable atomic sets of (N; 0, 1, +, -, =) truncated to [0, n): empty, singletons, everything."""
    return from_masks(n, [0] + [1 << x for x in range(n)] + [(1 << n) - 1])


def flatten(point: tuple[int, ...], n: int) -> int:
    idx = 0
    for c in point:
        idx = idx * n + c
    return idx


def less_equal_relation(n: int) -> int:
    """{(x, y) : x <= y} inside [0, n)^2."""
    return mask_of(flatten((x, y), n) for x in range(n) for y in range(x, n))


def remainder_relation(n: int) -> int:
    """{(x, y, z) : rem(x, y) = z} inside [0, n)^3, with y >= 1."""
    return mask_of(flatten((x, y, x % y), n) for x in range(n) for y in range(1, n))


def slice_set(mask: int, n: int, arity: int, fixed: tuple[int, ...]) -> int:
    """{x : (x, *fixed) in mask}."""
    if len(fixed) != arity - 1 or any(not 0 <= c < n for c in fixed):
        raise ValueError("fixed coordinates must fill positions 2..arity inside the box")
    return mask_of(x for x in range(n) if (mask >> flatten((x, *fixed), n)) & 1)


def slice_family(system: SetSystem, n: int, arity: int, fixed: tuple[int, ...]) -> SetSystem:
    if system.domain_size != n**arity:
        raise ValueError("system domain must be the flattened box [0, n)^arity")
    return from_masks(n, [slice_set(s, n, arity, fixed) for s in system.family])


# --- shattering witnesses ----------------------------------------------------------------


def residue_shatter_tree(n: int) -> tuple[LabeledTree, SetSystem]:
    """Depth-n tree over residue_family(2**n); the vertex at path b tests rem(x, 2^(j+1)) = r.

    Here j = len(b) and r is the residue mod 2^j fixed by the path (right = bit set).
    """
    size = 1 << n
    fam = residue_family(size)
    labeling = {}
    for j in range(n):
        for i in range(1 << j):
            v = format(i, f"0{j}b") if j else ""
            r = sum(1 << t for t, bit in enumerate(v) if bit == "1")
            labeling[v] = fam.index_of(range(r, size, 1 << (j + 1)))
    return build_balanced(n, labeling), fam


def threshold_shatter_tree(n: int) -> tuple[LabeledTree, SetSystem]:
    """Binary search over threshold_family(2**n)."""
    size = 1 << n
    fam = threshold_family(size)
    labeling = {}
    for j in range(n):
        block = size >> j
        for i in range(1 << j):
            v = format(i, f"0{j}b") if j else ""
            mid = i * block + block // 2
            labeling[v] = mid - 1  # index k of {x <= k}
    return build_balanced(n, labeling), fam


def shattering_certificate(tree: LabeledTree, family: SetSystem, y: int) -> dict[str, int] | None:
    """Leaf -> the single element of ``y`` realizing it, when the regions are singletons covering ``y``."""
    cert = {}
    for r in leaf_regions(tree, family, y):
        if r.region.bit_count() != 1:
            return None
        cert[r.leaf] = r.region.bit_length() - 1
    return cert


# --- minimum depth --------------------------------------------------------------------------


def min_decision_depth(instance: ComputationInstance, depth_cap: int = 16, budget: int = 1_000_000) -> int | None:
    """Least depth of a tree over the label family computing target over reference.

    Returns None when the answer exceeds ``depth_cap``; raises BudgetExceeded when
    the memo table outgrows ``budget`` entries.
    """
    g = instance.target
    labels = instance.label_family.family
    memo: dict[int, int] = {}

    def mdd(region: int) -> int:
        inside = region & g
        if inside == 0 or inside == region:
            return 0
        hit = memo.get(region)
        if hit is not None:
            return hit
        if len(memo) >= budget:
            raise BudgetExceeded(f"memo table exceeded {budget} regions")
        best = depth_cap + 1
        for f in labels:
            a = region & f
            if a == 0 or a == region:
                continue
            best = min(best, 1 + max(mdd(a), mdd(region & ~f)))
            if best == 1:
                break
        memo[region] = best
        return best

    d = mdd(instance.reference)
    return d if d <= depth_cap else None


def lower_bound_target(n: int) -> int:
    """{x : x < 2^(n-1)} inside [0, 2^n)."""
    return (1 << (1 << (n - 1))) - 1


@dataclass
class LowerBoundRow:
    n: int
    structure: str
    depth: int | None
    status: str

    def to_record(self) -> dict:
        return {"n": self.n, "structure": self.structure, "depth": self.depth, "status": self.status}


def lower_bound_experiment(structure: str, n_range, depth_cap: int = 16, budget: int = 1_000_000) -> list[LowerBoundRow]:
    if structure not in ("equality", "order"):
        raise ValueError("structure must be 'equality' or 'order'")
    rows = []
    for n in n_range:
        size = 1 << n
        fam = atomic_equality_family(size) if structure == "equality" else threshold_family(size)
        inst = ComputationInstance(fam, lower_bound_target(n), (1 << size) - 1)
        try:
            d = min_decision_depth(inst, depth_cap, budget)
        except BudgetExceeded:
            rows.append(LowerBoundRow(n, structure, None, "exceeds-cap"))
            continue
        rows.append(LowerBoundRow(n, structure, d, "ok" if d is not None else "exceeds-cap"))
    return rows
