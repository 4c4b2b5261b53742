"""Ladders ``(x_1, F_1, ..., x_k, F_k)`` with ``x_i in F_j  <=>  i < j`` for i != j."""

from __future__ import annotations

from dataclasses import dataclass

from .complexity import BudgetExceeded, ConsistencyError, thicket_dim
from .setsystem import SetSystem, column_masks, dualize
from .trees import LabeledTree, is_realized


class LadderError(ValueError):
    pass


@dataclass(frozen=True)
class Ladder:
    elements: tuple[int, ...]
    sets: tuple[int, ...]
    strict: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def to_record(self) -> dict:
        return {"elements": list(self.elements), "sets": list(self.sets), "strict": self.strict}


def ladder_violations(system: SetSystem, ladder: Ladder) -> list[str]:
    if len(ladder.elements) != len(ladder.sets):
        return ["elements and sets differ in length"]
    out = []
    fam = system.family
    for i, x in enumerate(ladder.elements):
        for j, f in enumerate(ladder.sets):
            inside = bool((fam[f] >> x) & 1)
            if i == j:
                if ladder.strict and inside:
                    out.append(f"x_{i + 1} in F_{i + 1}")
            elif inside != (i < j):
                out.append(f"x_{i + 1} vs F_{j + 1}")
    return out


def is_ladder(system: SetSystem, ladder: Ladder) -> bool:
    return not ladder_violations(system, ladder)


def max_ladder(system: SetSystem, k_max: int = 64, strict: bool = False, budget: int = 1_000_000) -> Ladder:
    """A longest ladder of length at most ``k_max``.

    A prefix constrains its extensions only through the union ``U`` of its sets
    (new elements must avoid it) and the set ``C`` of its elements (new sets must
    contain it), so the search is memoized on ``(U, C)``. Each step grows U or C,
    which bounds the length by twice the domain size.
    """
    fam = system.family
    n = system.domain_size
    # (U, C) -> (length, exact, first move); inexact lengths are lower bounds hit at the room limit
    memo: dict[tuple[int, int], tuple[int, bool, tuple[int, int] | None]] = {}
    best: list[tuple[int, int]] = []
    path: list[tuple[int, int]] = []
    visits = 0

    def extend(used: int, chosen: int, room: int) -> int:
        nonlocal visits, best
        if room <= 0:
            return 0
        hit = memo.get((used, chosen))
        if hit is not None and (hit[1] or hit[0] >= room):
            return min(hit[0], room)
        visits += 1
        if visits > budget:
            raise BudgetExceeded("ladder search budget exhausted", _pairs_to_ladder(best, strict))
        length, move = 0, None
        for x in range(n):
            if (used >> x) & 1:
                continue
            for fi, f in enumerate(fam):
                if f & chosen != chosen or (strict and (f >> x) & 1):
                    continue
                path.append((x, fi))
                if len(path) > len(best):
                    best = list(path)
                got = 1 + extend(used | f, chosen | (1 << x), room - 1)
                path.pop()
                if got > length:
                    length, move = got, (x, fi)
                if length >= room:
                    break
            if length >= room:
                break
        memo[(used, chosen)] = (length, length < room, move)
        return length

    total = extend(0, 0, k_max)
    pairs: list[tuple[int, int]] = []
    used = chosen = 0
    while len(pairs) < total:
        move = memo[(used, chosen)][2]
        x, fi = move
        pairs.append(move)
        used |= fam[fi]
        chosen |= 1 << x
    return _pairs_to_ladder(pairs, strict)


def _pairs_to_ladder(pairs, strict: bool) -> Ladder:
    return Ladder(tuple(x for x, _ in pairs), tuple(f for _, f in pairs), strict)


def strictify(ladder: Ladder) -> Ladder:
    """(x_2, F_1, x_4, F_3, ..., x_2k, F_2k-1) from a 2k-ladder."""
    if len(ladder) % 2:
        raise LadderError("strictify needs an even-length ladder")
    return Ladder(ladder.elements[1::2], ladder.sets[0::2], True)


def ladder_to_tree(system: SetSystem, ladder: Ladder) -> tuple[LabeledTree, dict[str, int]]:
    """Balanced depth-k tree from a strict 2**k ladder, plus leaf -> witness certificate.

    Left means membership, so sets with larger ladder index sit further left: the
    leaf at position i (0-based, left to right) is realized by F_{2^k - i}. The
    vertex separating set block lo..hi (1-based, upper half sent left) is labeled
    x_mid with mid the top of the lower half.
    """
    m = len(ladder)
    if not ladder.strict or ladder_violations(system, ladder):
        raise LadderError("ladder_to_tree needs a valid strict ladder")
    if m == 0 or m & (m - 1):
        raise LadderError("ladder length must be a power of two")
    k = m.bit_length() - 1
    labels = {}

    def place(v: str, lo: int, hi: int) -> None:
        if lo == hi:
            return
        mid = (lo + hi) // 2
        labels[v] = ladder.elements[mid - 1]
        place(v + "0", mid + 1, hi)
        place(v + "1", lo, mid)

    place("", 1, m)
    tree = LabeledTree.from_labels(labels)
    cert = {}
    for i, leaf in enumerate(tree.leaves):
        f = ladder.sets[m - 1 - i]
        inside, outside = tree.path_condition(leaf)
        s = system.family[f]
        if s & inside != inside or s & outside:
            raise ConsistencyError(f"F_{m - i} does not realize leaf {leaf!r}")
        cert[leaf] = f
    assert tree.depth == k or m == 1
    return tree, cert


def verify_certificate(tree: LabeledTree, system: SetSystem, cert: dict[str, int]) -> bool:
    for leaf in tree.leaves:
        f = cert.get(leaf)
        if f is None:
            return False
        inside, outside = tree.path_condition(leaf)
        s = system.family[f]
        if s & inside != inside or s & outside:
            return False
    return all(is_realized(tree, leaf, system) is not None for leaf in tree.leaves)


def thicket_to_ladder_check(system: SetSystem, k: int, budget: int = 1_000_000) -> Ladder:
    """Search for a k-ladder where dimension at least 2**k - 1 guarantees one."""
    dim = thicket_dim(system)
    if dim < (1 << k) - 1:
        raise LadderError(f"dimension {dim} is below 2^{k}-1")
    found = max_ladder(system, k, budget=budget)
    if len(found) < k:
        raise ConsistencyError(f"dimension {dim} but no {k}-ladder exists")
    return found


def dual_ladder(system: SetSystem, ladder: Ladder) -> Ladder:
    """The same ladder read in ``dualize(system)``, reversed so the i < j pattern survives."""
    dual = dualize(system)
    cols = column_masks(system)
    elems = tuple(reversed(ladder.sets))
    sets = tuple(dual.family.index(cols[x]) for x in reversed(ladder.elements))
    return Ladder(elems, sets, ladder.strict)
