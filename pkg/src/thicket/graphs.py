"""Graphs as neighborhood set systems: half-graphs, type trees, homogeneous sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complexity import BudgetExceeded, thicket_dim
from .ladders import Ladder, is_ladder, max_ladder
from .setsystem import ParseError, SetSystem, from_masks, members
from .trees import LabeledTree, is_realized


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[int, ...]  # row v is the bitmask of neighbors of v
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency must have one row per vertex")
        for v, row in enumerate(self.adjacency):
            if (row >> v) & 1:
                raise GraphError(f"self-loop at {v}")
            if row >> self.n:
                raise GraphError(f"row {v} references a missing vertex")
            for u in members(row):
                if not (self.adjacency[u] >> v) & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adjacency[u]) if u < v]

    def name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)


def graph_from_edges(n: int, edges, names=None) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), tuple(names) if names else None)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def half_graph(k: int) -> Graph:
    """a_1..a_k are vertices 0..k-1, b_1..b_k are k..2k-1; a_i ~ b_j iff i < j."""
    if k < 1:
        raise GraphError("k must be at least 1")
    edges = [(i, k + j) for i in range(k) for j in range(k) if i < j]
    names = [f"a{i + 1}" for i in range(k)] + [f"b{j + 1}" for j in range(k)]
    return graph_from_edges(2 * k, edges, names)


def counterexample_graph() -> Graph:
    """V = {a, b, c, d, e}, E = {ab, ac, cd}: a 3-ladder in the neighborhoods but no H_3."""
    return graph_from_edges(5, [(0, 1), (0, 2), (2, 3)], "abcde")


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def neighborhood_system(graph: Graph) -> SetSystem:
    names = [f"N({graph.name(v)})" for v in range(graph.n)]
    return from_masks(graph.n, graph.adjacency, names)


def parse_edges(text: str) -> Graph:
    rows = [(i + 1, ln.split("#")[0].split()) for i, ln in enumerate(text.splitlines())]
    rows = [(i, p) for i, p in rows if p]
    if not rows:
        raise ParseError(1, "empty input")
    lineno, head = rows[0]
    if len(head) != 2 or not all(p.isdigit() for p in head):
        raise ParseError(lineno, "expected header 'n m'")
    n, m = map(int, head)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(body[-1][0] if body else lineno, f"expected {m} edge lines, found {len(body)}")
    edges = []
    for lineno, parts in body:
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(lineno, "expected 'u v'")
        u, v = map(int, parts)
        if u >= n or v >= n or u == v:
            raise ParseError(lineno, f"bad edge {u} {v}")
        edges.append((u, v))
    return graph_from_edges(n, edges)


def format_edges(graph: Graph) -> str:
    es = graph.edges()
    return "\n".join([f"{graph.n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"


# --- half-graphs -------------------------------------------------------------------


def _pattern_ok(graph: Graph, us, vs, mode: str) -> bool:
    k = len(us)
    for i in range(k):
        for j in range(k):
            e = graph.adjacent(us[i], vs[j])
            if mode == "subgraph":
                if i < j and not e:
                    return False
            elif (i < j) != e:
                return False
    if mode == "induced":
        for i in range(k):
            for j in range(i + 1, k):
                if graph.adjacent(us[i], us[j]) or graph.adjacent(vs[i], vs[j]):
                    return False
    return True


def contains_half_graph(graph: Graph, k: int, mode: str = "semi", budget: int = 2_000_000):
    """Distinct u_1..u_k, v_1..v_k with u_i ~ v_j exactly when i < j, or None.

    ``mode="semi"`` leaves edges inside each side free (the pattern a distinct
    strict ladder of neighborhoods gives); ``"induced"`` forbids them;
    ``"subgraph"`` only requires the edges for i < j.
    """
    if mode not in ("semi", "induced", "subgraph"):
        raise ValueError(f"unknown mode {mode!r}")
    if k == 0:
        return (), ()
    adj = graph.adjacency
    n = graph.n
    visits = 0
    us: list[int] = []
    vs: list[int] = []

    # place pairs (u_t, v_t) in order; u_t must miss v_1..v_t, v_t must miss u_t and hit u_1..u_{t-1}
    def go(used: int) -> bool:
        nonlocal visits
        t = len(us)
        if t == k:
            return True
        visits += 1
        if visits > budget:
            raise BudgetExceeded("half-graph search budget exhausted")
        prev_u = sum(1 << u for u in us)
        prev_v = sum(1 << v for v in vs)
        for u in range(n):
            if (used >> u) & 1:
                continue
            if mode != "subgraph" and adj[u] & prev_v:
                continue
            if mode == "induced" and adj[u] & prev_u:
                continue
            for v in range(n):
                if (used >> v) & 1 or v == u:
                    continue
                if adj[v] & prev_u != prev_u:
                    continue
                if mode != "subgraph" and (adj[v] >> u) & 1:
                    continue
                if mode == "induced" and adj[v] & prev_v:
                    continue
                us.append(u)
                vs.append(v)
                if go(used | (1 << u) | (1 << v)):
                    return True
                us.pop()
                vs.pop()
        return False

    if go(0):
        assert _pattern_ok(graph, us, vs, mode)
        return tuple(us), tuple(vs)
    return None


def ladder_from_half_graph(graph: Graph, us, vs) -> tuple[SetSystem, Ladder]:
    system = neighborhood_system(graph)
    sets = tuple(system.family.index(graph.adjacency[v]) for v in vs)
    return system, Ladder(tuple(us), sets, True)


def required_ladder_length(k: int) -> int:
    """Strict ladder length from which :func:`extract_distinct` always succeeds: k(k+1)."""
    return k * (k + 1)


def extract_distinct(graph: Graph, us, vs, k: int):
    """Pick indices j_1 <= i_1 < j_2 <= i_2 < ... with all chosen u's and v's distinct.

    ``(us[t], N(vs[t]))`` must form a strict ladder. Block sizes are m for v_{j_m}
    (it must avoid m-1 chosen u's) and m+1 for u_{i_m} (it must avoid m chosen v's).
    """
    a: list[int] = []
    b: list[int] = []
    p = 0
    for m in range(1, k + 1):
        j = next((t for t in range(p, min(p + m, len(vs))) if vs[t] not in a), None)
        if j is None:
            return None
        b.append(vs[j])
        i = next((t for t in range(j, min(j + m + 1, len(us))) if us[t] not in b), None)
        if i is None:
            return None
        a.append(us[i])
        p = i + 1
    return tuple(a), tuple(b)


@dataclass
class DistinctLadderResult:
    ladder: Ladder
    us: tuple[int, ...]
    vs: tuple[int, ...]
    method: str  # "extracted" from a long strict ladder, or "searched" directly


def distinct_strict_ladder(graph: Graph, k: int, budget: int = 2_000_000) -> DistinctLadderResult | None:
    system = neighborhood_system(graph)
    need = required_ladder_length(k)
    long = max_ladder(system, need, strict=True, budget=budget)
    if len(long) >= need:
        owners = {}
        for v in range(graph.n):
            owners.setdefault(graph.adjacency[v], v)
        vs_all = [owners[system.family[f]] for f in long.sets]
        picked = extract_distinct(graph, list(long.elements), vs_all, k)
        if picked is None:
            raise AssertionError("extraction failed on a long enough strict ladder")
        us, vs = picked
        method = "extracted"
    else:
        found = contains_half_graph(graph, k, "semi", budget)
        if found is None:
            return None
        us, vs = found
        method = "searched"
    _, ladder = ladder_from_half_graph(graph, us, vs)
    assert is_ladder(system, ladder)
    return DistinctLadderResult(ladder, tuple(us), tuple(vs), method)


# --- type trees -------------------------------------------------------------------------

PIVOTS = ("lowest", "maxdeg", "random")


@dataclass
class TypeTree:
    """Every vertex of the tree carries a graph vertex; unary vertices occur."""

    labels: dict[str, int]
    element_of: dict[int, str] = field(default_factory=dict)
    pivot: str = "lowest"
    seed: int | None = None

    @property
    def depth(self) -> int:
        return max((len(v) for v in self.labels), default=-1)

    def children(self, v: str) -> list[str]:
        return [v + c for c in "01" if v + c in self.labels]

    def leaves(self) -> list[str]:
        return sorted(v for v in self.labels if not self.children(v))

    def element_tree(self) -> LabeledTree:
        """Labels on childless vertices removed; unary vertices kept."""
        if not self.labels:
            raise GraphError("empty type tree")
        internal = {v: x for v, x in self.labels.items() if self.children(v)}
        return LabeledTree(frozenset(self.labels), internal, canonical=False)

    def path_to(self, v: str) -> list[int]:
        return [self.labels[v[:i]] for i in range(len(v) + 1)]

    def to_record(self) -> dict:
        return {"pivot": self.pivot, "seed": self.seed, "labels": {v or "root": x for v, x in sorted(self.labels.items())}}


def type_tree(graph: Graph, s_set=None, pivot: str = "lowest", seed: int | None = None) -> TypeTree:
    if pivot not in PIVOTS:
        raise GraphError(f"unknown pivot strategy {pivot!r}; choose from {PIVOTS}")
    s = (1 << graph.n) - 1 if s_set is None else (s_set if isinstance(s_set, int) else sum(1 << v for v in s_set))
    rng = random.Random(seed)
    labels: dict[str, int] = {}

    def choose(pool: int) -> int:
        cand = members(pool)
        if pivot == "lowest":
            return cand[0]
        if pivot == "maxdeg":
            return max(cand, key=lambda v: ((graph.adjacency[v] & pool).bit_count(), -v))
        return rng.choice(cand)

    stack = [("", s)]
    while stack:
        v, pool = stack.pop()
        if not pool:
            continue
        x = choose(pool)
        labels[v] = x
        rest = pool & ~(1 << x)
        stack.append((v + "1", rest & ~graph.adjacency[x]))
        stack.append((v + "0", rest & graph.adjacency[x]))
    return TypeTree(labels, {x: v for v, x in labels.items()}, pivot, seed)


def type_tree_violations(graph: Graph, tree: TypeTree, s_set: int | None = None) -> list[str]:
    out = []
    s = (1 << graph.n) - 1 if s_set is None else s_set
    if sorted(tree.labels.values()) != members(s):
        out.append("labels are not a bijection onto S")
    for v, t in tree.labels.items():
        for i in range(len(v)):
            s_anc = tree.labels[v[:i]]
            if (v[i] == "0") != graph.adjacent(s_anc, t):
                out.append(f"{t} below {s_anc} on the wrong side")
    if tree.labels:
        et = tree.element_tree()
        system = neighborhood_system(graph)
        for leaf in et.leaves:
            if is_realized(et, leaf, system) is None:
                out.append(f"leaf {leaf!r} unrealized")
    return out


def path_split(graph: Graph, tree: TypeTree, end: str) -> tuple[set[int], set[int]]:
    """Split the labels on the path from the root to ``end`` into a clique and an independent set.

    Vertices above ``end`` go by the direction taken toward it; the label of
    ``end`` joins the larger side (the clique on ties), being adjacent to all of
    the clique side and to none of the independent side.
    """
    if end not in tree.labels:
        raise GraphError(f"{end!r} is not a vertex of the type tree")
    clique, indep = set(), set()
    for i in range(len(end)):
        (clique if end[i] == "0" else indep).add(tree.labels[end[:i]])
    (clique if len(clique) >= len(indep) else indep).add(tree.labels[end])
    return clique, indep


def is_clique(graph: Graph, vs) -> bool:
    vs = list(vs)
    return all(graph.adjacent(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def is_independent(graph: Graph, vs) -> bool:
    vs = list(vs)
    return not any(graph.adjacent(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def eh_size_bound(n: int, k: int) -> int:
    """Least integer t with (2t + 2) ** (k + 1) >= n, i.e. ceil((n^(1/(k+1)) - 2) / 2)."""
    t = -1
    while (2 * t + 2) ** (k + 1) < n:
        t += 1
    return t


@dataclass
class Homogeneous:
    vertices: tuple[int, ...]
    kind: str  # "clique" or "independent"
    tree_depth: int
    dim: int
    path_end: str

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "size": len(self.vertices),
            "type_tree_depth": self.tree_depth,
            "neighborhood_dim": self.dim,
            "bound_from_depth": -(-(self.tree_depth + 1) // 2),
        }


def eh_extract(graph: Graph, pivot: str = "lowest", seed: int | None = None) -> Homogeneous:
    if graph.n == 0:
        raise GraphError("graph has no vertices")
    tree = type_tree(graph, None, pivot, seed)
    end = max(tree.labels, key=lambda v: (len(v), [-ord(c) for c in v]))
    clique, indep = path_split(graph, tree, end)
    dim = thicket_dim(neighborhood_system(graph))
    if len(clique) >= len(indep):
        return Homogeneous(tuple(sorted(clique)), "clique", tree.depth, dim, end)
    return Homogeneous(tuple(sorted(indep)), "independent", tree.depth, dim, end)
