"""Write DOT files for the worked trees: the pairs-family element tree, the residue tree,
a type tree of the five-vertex counterexample graph, and the 8-rung threshold ladder tree."""

import argparse
from itertools import combinations
from pathlib import Path

from thicket.decision import residue_shatter_tree
from thicket.graphs import counterexample_graph, neighborhood_system, type_tree
from thicket.ladders import Ladder, ladder_to_tree, max_ladder, strictify
from thicket.setsystem import build_system, from_masks, members
from thicket.trees import build_balanced, leaf_regions, realized_leaf_count, to_dot

PAIRS_TREE = {"": 1, "0": 1, "00": 2, "01": 0, "1": 2, "10": 3, "11": 10}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    pairs = build_system(11, [set(p) for p in combinations(range(11), 2)])
    t = build_balanced(3, PAIRS_TREE)
    (args.out / "pairs_tree.dot").write_text(to_dot(t, pairs, title="Pairs"))
    print(f"pairs tree: {realized_leaf_count(t, pairs)} of {len(t.leaves)} leaves realized")

    tree, fam = residue_shatter_tree(3)
    names = [f"{sorted(members(s))}" for s in fam.family]
    (args.out / "residue_tree.dot").write_text(to_dot(tree, names=names, title="Residue"))
    print("residue tree leaves:", [members(r.region) for r in leaf_regions(tree, fam, 0xFF)])

    g = counterexample_graph()
    tt = type_tree(g)
    dot = to_dot(tt.element_tree(), neighborhood_system(g), names=list("abcde"), title="TypeTree")
    (args.out / "counterexample_type_tree.dot").write_text(dot)
    print("counterexample type tree:", {v or "root": g.name(x) for v, x in sorted(tt.labels.items())})

    below16 = from_masks(16, [(1 << j) - 1 for j in range(1, 17)])
    strict = strictify(max_ladder(below16, k_max=16))
    lt, cert = ladder_to_tree(below16, Ladder(strict.elements[:8], strict.sets[:8], True))
    (args.out / "ladder_tree.dot").write_text(to_dot(lt, below16, title="Ladder"))
    print("ladder tree certificate:", cert)


if __name__ == "__main__":
    main()
