"""The nine acceptance criteria, each exact. Run directly for a plain pass/fail listing."""

import random
import sys
import time
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE  # noqa: E402

from thicket.complexity import (  # noqa: E402
    dual_dim,
    integer_tree_leaf_bound,
    phi,
    rho,
    rho_bruteforce,
    sauer_shelah_report,
    thicket_dim,
    thicket_dim_bruteforce,
    vc_dim,
)
from thicket.decision import (  # noqa: E402
    lower_bound_experiment,
    partition_refines,
    residue_shatter_tree,
    compose,
    threshold_family,
)
from thicket.graphs import (  # noqa: E402
    PIVOTS,
    contains_half_graph,
    counterexample_graph,
    eh_extract,
    eh_size_bound,
    half_graph,
    is_clique,
    is_independent,
    neighborhood_system,
    path_split,
    random_graph,
    type_tree,
    type_tree_violations,
)
from thicket.ladders import (  # noqa: E402
    Ladder,
    is_ladder,
    ladder_to_tree,
    ladder_violations,
    max_ladder,
    strictify,
    thicket_to_ladder_check,
    verify_certificate,
)
from thicket.setsystem import (  # noqa: E402
    build_system,
    check_isomorphism,
    double_dual_isomorphism,
    dualize,
    from_masks,
)
from thicket.trees import build_balanced, leaf_regions, realization_certificate  # noqa: E402

SEED = 1729


def small_corpus():
    """Every system with domain <= 4 and at most 8 distinct sets (~39.5k systems)."""
    out = []
    for n in range(5):
        masks = range(1 << n)
        for size in range(min(8, 1 << n) + 1):
            for fam in combinations(masks, size):
                out.append(from_masks(n, fam))
    return out


def random_corpus(count=500, max_domain=7, max_family=20, seed=SEED):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_domain)
        m = rng.randint(0, max_family)
        out.append(from_masks(n, [rng.randrange(1 << n) for _ in range(m)]))
    return out


_CORPUS = []


def corpus():
    if not _CORPUS:
        _CORPUS.extend(small_corpus())
    return _CORPUS


def record(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    return ok, detail


def criterion_1():
    bad = 0
    systems = corpus() + random_corpus()
    for s in systems:
        # the oracle stops at depth 3
        if min(thicket_dim(s), 3) != thicket_dim_bruteforce(s, 3):
            bad += 1
        elif any(rho(s, n) != rho_bruteforce(s, n) for n in range(4)):
            bad += 1
    return record(1, bad == 0, f"{len(systems)} systems, {bad} disagreements with brute force")


def criterion_2():
    bad = 0
    for s in corpus():
        if sauer_shelah_report(s, 6, strict=False).violations:
            bad += 1
    bounds = []
    for k in range(3):
        for depth in range(4):
            _, best = integer_tree_leaf_bound(depth, k)
            bounds.append(best <= phi(depth, k))
    ok = bad == 0 and all(bounds)
    return record(2, ok, f"{bad} Sauer-Shelah violations; integer-tree bound holds in {sum(bounds)}/{len(bounds)} cases")


PAIRS_TREE = {"": 1, "0": 1, "00": 2, "01": 0, "1": 2, "10": 3, "11": 10}


def criterion_3():
    tree, fam = residue_shatter_tree(3)
    order = [r.region.bit_length() - 1 for r in leaf_regions(tree, fam, 0xFF)]
    single = all(r.region.bit_count() == 1 for r in leaf_regions(tree, fam, 0xFF))
    fig = build_balanced(3, PAIRS_TREE)
    pairs = build_system(11, [set(p) for p in combinations(range(11), 2)])
    cert = realization_certificate(fig, pairs)
    filled = [v for v in fig.leaves if cert[v] is not None]
    ok = single and order == [0, 4, 2, 6, 1, 5, 3, 7] and len(filled) == 6
    return record(3, ok, f"residue leaf order {order}; pairs tree realizes {len(filled)} of 8 leaves")


def criterion_4():
    rng = random.Random(SEED)
    strict_ok = True
    for s in random_corpus(300, 6, 12, seed=SEED + 1):
        lad = max_ladder(s)
        even = len(lad) // 2 * 2
        if even and ladder_violations(s, strictify(Ladder(lad.elements[:even], lad.sets[:even]))):
            strict_ok = False
    trees_ok = True
    fixtures = [from_masks(16, [(1 << j) - 1 for j in range(1, 17)]), neighborhood_system(half_graph(8))]
    for s in fixtures:
        strict = max_ladder(s, strict=True)
        for k in range(4):
            m = 1 << k
            if len(strict) < m:
                trees_ok = False
                continue
            tree, cert = ladder_to_tree(s, Ladder(strict.elements[:m], strict.sets[:m], True))
            trees_ok &= tree.depth == k and tree.is_balanced() and verify_certificate(tree, s, cert)
    found = tested = 0
    while tested < 200:
        n = rng.randint(3, 6)
        s = from_masks(n, [rng.randrange(1 << n) for _ in range(rng.randint(4, 20))])
        d = thicket_dim(s)
        if d < 1:
            continue
        tested += 1
        k = 2 if d >= 3 else 1
        found += len(thicket_to_ladder_check(s, k)) >= k
    ok = strict_ok and trees_ok and found == tested
    return record(4, ok, f"strictify ok={strict_ok}; fixture trees ok={trees_ok}; ladders found {found}/{tested}")


def criterion_5():
    bad_iso = bad_bound = 0
    for s in corpus():
        if s.family:
            e, f = double_dual_isomorphism(s)
            if not check_isomorphism(s, dualize(dualize(s)), e, f):
                bad_iso += 1
        d = thicket_dim(s)
        if dual_dim(s) > 2 ** (2 ** (d + 2)) - 2:
            bad_bound += 1
    return record(5, bad_iso == 0 and bad_bound == 0, f"{bad_iso} isomorphism failures, {bad_bound} dual bound failures")


def criterion_6():
    rng = random.Random(SEED)
    bad = []
    for i in range(300):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        k = max(thicket_dim(neighborhood_system(g)), 0)
        for pivot in PIVOTS:
            t = type_tree(g, pivot=pivot, seed=i)
            if type_tree_violations(g, t):
                bad.append(f"type tree {i}/{pivot}")
            for end in t.leaves():
                q, r = path_split(g, t, end)
                if not (is_clique(g, q) and is_independent(g, r)):
                    bad.append(f"split {i}/{pivot}/{end}")
            hom = eh_extract(g, pivot, seed=i)
            check = is_clique if hom.kind == "clique" else is_independent
            if not check(g, hom.vertices):
                bad.append(f"homogeneity {i}/{pivot}")
            if len(hom.vertices) < -(-(hom.tree_depth + 1) // 2) or len(hom.vertices) < eh_size_bound(g.n, k):
                bad.append(f"size {i}/{pivot}")
    cx = counterexample_graph()
    lad = max_ladder(neighborhood_system(cx), k_max=3)
    cx_ok = len(lad) == 3 and is_ladder(neighborhood_system(cx), lad) and contains_half_graph(cx, 3) is None
    return record(6, not bad and cx_ok, f"{len(bad)} failures over 300 graphs x 3 pivots; counterexample ok={cx_ok}")


def _random_set_tree(rng, n_labels, max_depth):
    d = rng.randint(0, max_depth)
    labels = {}
    for k in range(d):
        for i in range(1 << k):
            labels[format(i, f"0{k}b") if k else ""] = rng.randrange(n_labels)
    return build_balanced(d, labels)


def criterion_7():
    rng = random.Random(SEED)
    size = 16
    bad = 0
    for _ in range(100):
        fam = threshold_family(size) if rng.random() < 0.5 else from_masks(size, [rng.randrange(1 << size) for _ in range(6)])
        y = rng.randrange(1, 1 << size)
        inner, masks = [], []
        for _ in range(rng.randint(1, 4)):
            t = _random_set_tree(rng, len(fam.family), 3)
            regs = [r.region for r in leaf_regions(t, fam, y)]
            masks.append(sum(r for r in regs if rng.random() < 0.5))
            inner.append(t)
        outer_fam = from_masks(size, masks)
        trees = {outer_fam.family.index(m): t for m, t in reversed(list(zip(masks, inner)))}
        outer = _random_set_tree(rng, len(outer_fam.family), 3)
        star = compose(outer, outer_fam, trees, fam, y)
        fine = [r.region for r in leaf_regions(star, fam, y)]
        coarse = [r.region for r in leaf_regions(outer, outer_fam, y)]
        used = [trees[g].depth for g in set(outer.labels.values())]
        ok = (
            partition_refines(fine, coarse)
            and sum(map(bool, fine)) >= sum(map(bool, coarse))
            and star.depth <= outer.depth * max(used, default=0)
        )
        bad += not ok
    return record(7, bad == 0, f"{bad} of 100 composition instances failed")


def criterion_8():
    eq = [r.depth for r in lower_bound_experiment("equality", range(2, 5))]
    order = [r.depth for r in lower_bound_experiment("order", range(2, 5))]
    return record(8, eq == [2, 4, 8] and order == [1, 1, 1], f"equality {eq}, order {order}")


def criterion_9():
    bad = sum(vc_dim(s) > thicket_dim(s) for s in corpus())
    gap = []
    for k in range(1, 6):
        fam = threshold_family(1 << k)
        strict = strictify(Ladder(*_even(max_ladder(fam, k_max=1 << k))))
        m = 1 << (k - 1)
        tree, cert = ladder_to_tree(fam, Ladder(strict.elements[:m], strict.sets[:m], True))
        gap.append(vc_dim(fam) == 1 and verify_certificate(tree, fam, cert) and tree.depth >= k - 1)
    ok = bad == 0 and all(gap)
    return record(9, ok, f"{bad} corpus systems with vc > dim; threshold gap shown for k=1..5: {all(gap)}")


def _even(lad):
    e = len(lad) // 2 * 2
    return lad.elements[:e], lad.sets[:e]


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]
LIMITS = {1: 120, 2: 120, 3: 1, 4: 120, 5: 60, 6: 180, 7: 60, 8: 60, 9: 60}


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k):
    start = time.perf_counter()
    ok, detail = CRITERIA[k - 1]()
    elapsed = time.perf_counter() - start
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}  ({elapsed:.1f}s)")
    assert ok, detail
    assert elapsed < LIMITS[k], f"took {elapsed:.1f}s, limit {LIMITS[k]}s"


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, detail = fn()
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - t0:.1f}s)")
