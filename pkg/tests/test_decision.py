import random

import pytest
from hypothesis import given, settings, strategies as st

from thicket.decision import (
    ComputationInstance,
    CompositionError,
    atomic_equality_family,
    compose,
    computes,
    flatten,
    less_equal_relation,
    lower_bound_experiment,
    lower_bound_target,
    min_decision_depth,
    partition_refines,
    remainder_relation,
    residue_family,
    residue_shatter_tree,
    shattering_certificate,
    slice_family,
    threshold_family,
    threshold_shatter_tree,
)
from thicket.setsystem import from_masks
from thicket.trees import LabeledTree, build_balanced, leaf_regions

FULL8 = 0xFF
LE3 = 0b1111  # {x <= 3} in [0, 8)


def regions(tree, fam, y):
    return [r.region for r in leaf_regions(tree, fam, y)]


def test_computes_examples():
    fam = threshold_family(8)
    leaf = LabeledTree.leaf()
    assert computes(leaf, ComputationInstance(fam, FULL8, FULL8)) == {""}
    assert computes(leaf, ComputationInstance(fam, 0, FULL8)) == frozenset()
    t = LabeledTree.from_labels({"": 3})
    assert computes(t, ComputationInstance(fam, LE3, FULL8)) == {"0"}
    assert computes(t, ComputationInstance(fam, 0b1, FULL8)) is None
    with pytest.raises(ValueError):
        ComputationInstance(fam, 1 << 8, FULL8)


def test_compose_examples():
    fam = threshold_family(8)
    outer_fam = from_masks(8, [LE3])
    leaf = LabeledTree.leaf()
    assert compose(leaf, outer_fam, {}, fam, FULL8) == leaf
    outer = LabeledTree.from_labels({"": 0})
    inner = LabeledTree.from_labels({"": 3})
    star = compose(outer, outer_fam, {0: inner}, fam, FULL8)
    assert regions(star, fam, FULL8) == regions(outer, outer_fam, FULL8)
    with pytest.raises(CompositionError):
        compose(outer, outer_fam, {}, fam, FULL8)
    with pytest.raises(CompositionError):
        compose(outer, outer_fam, {0: LabeledTree.from_labels({"": 1})}, fam, FULL8)


def test_compose_depth_two_outer():
    fam = threshold_family(8)
    outer_fam = from_masks(8, [0b1111, 0b11])
    outer = build_balanced(2, {"": 0, "0": 1, "1": 1})
    trees = {0: LabeledTree.from_labels({"": 3}), 1: LabeledTree.from_labels({"": 1})}
    star = compose(outer, outer_fam, trees, fam, FULL8)
    assert star.depth <= 2
    assert partition_refines(regions(star, fam, FULL8), regions(outer, outer_fam, FULL8))


def test_families():
    assert [sorted(s) for s in threshold_family(3).sets()] == [[0], [0, 1], [0, 1, 2]]
    assert [sorted(s) for s in atomic_equality_family(3).sets()] == [[], [0], [1], [2], [0, 1, 2]]
    assert {frozenset(s) for s in residue_family(4).sets()} >= {frozenset({0, 2}), frozenset({1, 3}), frozenset({0, 1, 2, 3})}


def test_relations_and_slices():
    n = 4
    le = less_equal_relation(n)
    assert (le >> flatten((1, 3), n)) & 1 and not (le >> flatten((3, 1), n)) & 1
    rem = remainder_relation(n)
    assert (rem >> flatten((3, 2, 1), n)) & 1
    sys2 = from_masks(n * n, [le])
    assert [sorted(s) for s in slice_family(sys2, n, 2, (2,)).sets()] == [[0, 1, 2]]
    with pytest.raises(ValueError):
        slice_family(sys2, n, 2, (4,))


def test_residue_tree_figure():
    tree, fam = residue_shatter_tree(3)
    assert shattering_certificate(tree, fam, FULL8) == dict(zip(tree.leaves, (0, 4, 2, 6, 1, 5, 3, 7)))
    tree, fam = residue_shatter_tree(2)
    assert [r.bit_length() - 1 for r in regions(tree, fam, 0xF)] == [0, 2, 1, 3]
    tree, fam = residue_shatter_tree(0)
    assert regions(tree, fam, 1) == [1]


def test_threshold_tree():
    tree, fam = threshold_shatter_tree(1)
    assert fam.family[tree.labels[""]] == 0b1
    assert regions(tree, fam, 0b11) == [0b1, 0b10]
    for n in (2, 3):
        tree, fam = threshold_shatter_tree(n)
        cert = shattering_certificate(tree, fam, (1 << (1 << n)) - 1)
        assert sorted(cert.values()) == list(range(1 << n))


def test_min_depth_examples():
    thr = threshold_family(8)
    assert min_decision_depth(ComputationInstance(thr, FULL8, FULL8)) == 0
    assert min_decision_depth(ComputationInstance(thr, LE3, FULL8)) == 1
    eq = atomic_equality_family(8)
    assert min_decision_depth(ComputationInstance(eq, LE3, FULL8)) == 4
    assert min_decision_depth(ComputationInstance(eq, LE3, FULL8), depth_cap=3) is None


def test_lower_bound_rows():
    assert lower_bound_target(3) == 0b1111
    assert [r.depth for r in lower_bound_experiment("equality", range(2, 5))] == [2, 4, 8]
    assert [r.depth for r in lower_bound_experiment("order", range(2, 5))] == [1, 1, 1]
    capped = lower_bound_experiment("equality", [4], depth_cap=5)
    assert capped[0].status == "exceeds-cap" and capped[0].depth is None
    with pytest.raises(ValueError):
        lower_bound_experiment("successor", [2])


@st.composite
def set_trees(draw, n_labels, max_depth=2):
    d = draw(st.integers(0, max_depth))
    labels = {}
    for k in range(d):
        for i in range(1 << k):
            labels[format(i, f"0{k}b") if k else ""] = draw(st.integers(0, n_labels - 1))
    return build_balanced(d, labels)


@settings(max_examples=60)
@given(st.data())
def test_compose_refines(data):
    size = 8
    fam = threshold_family(size)
    y = data.draw(st.integers(1, (1 << size) - 1))
    inner = {}
    masks = []
    for g in range(3):
        t = data.draw(set_trees(len(fam.family)))
        regs = [r.region for r in leaf_regions(t, fam, y)]
        keep = data.draw(st.lists(st.booleans(), min_size=len(regs), max_size=len(regs)))
        masks.append(sum(r for r, k in zip(regs, keep) if k))
        inner[g] = t
    outer_fam = from_masks(size, masks)
    trees = {outer_fam.family.index(m): inner[g] for g, m in reversed(list(enumerate(masks)))}
    outer = data.draw(set_trees(len(outer_fam.family)))
    star = compose(outer, outer_fam, trees, fam, y)
    fine = regions(star, fam, y)
    assert partition_refines(fine, regions(outer, outer_fam, y))
    assert sum(1 for r in fine if r) >= sum(1 for r in regions(outer, outer_fam, y) if r)
    used = [trees[g].depth for g in set(outer.labels.values())]
    assert star.depth <= outer.depth * max(used, default=0)
