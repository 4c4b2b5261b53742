"""Thicket dimension, shatter function, minimum-depth function and VC dimension.

The exact routines recurse on restrictions ``F_x`` / ``F_x̄`` with memoization
keyed on the subfamily. The ``*_bruteforce`` routines enumerate every labeling
of a balanced tree explicitly and serve as independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .setsystem import SetSystem, dualize, members

DEFAULT_BUDGET = 2_000_000
MAX_N = 24


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class ConsistencyError(AssertionError):
    """A proven inequality failed; indicates a bug, never bad input."""


def phi(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0:
        return 0
    return sum(math.comb(n, i) for i in range(min(n, k) + 1))


def _split_mask(fam: frozenset[int]) -> int:
    union, inter = 0, -1
    for s in fam:
        union |= s
        inter &= s
    return union & ~inter if fam else 0


def _halves(fam: frozenset[int], x: int) -> tuple[frozenset[int], frozenset[int]]:
    a = frozenset(s for s in fam if (s >> x) & 1)
    return a, fam - a


@lru_cache(maxsize=1 << 20)
def _dim(fam: frozenset[int]) -> int:
    if not fam:
        return -1
    if len(fam) == 1:
        return 0
    ceiling = len(fam).bit_length() - 1  # a full depth-d tree needs 2**d witnesses
    best = 0
    for x in members(_split_mask(fam)):
        a, b = _halves(fam, x)
        best = max(best, 1 + min(_dim(a), _dim(b)))
        if best == ceiling:
            break
    return best


def thicket_dim(system: SetSystem) -> int:
    return _dim(frozenset(system.family))


@lru_cache(maxsize=1 << 20)
def _rho(fam: frozenset[int], n: int, domain_size: int) -> int:
    if not fam:
        return 0
    if n == 0:
        return 1
    if domain_size == 0:
        return 0  # no element can label the root
    m = len(fam)
    if n >= m - 1:
        # distinct sets can be peeled apart one split at a time
        return m
    cap = min(1 << n, m)
    split = _split_mask(fam)
    best = 0
    if split.bit_count() < domain_size:
        best = _rho(fam, n - 1, domain_size)
    for x in members(split):
        if best == cap:
            break
        a, b = _halves(fam, x)
        best = max(best, _rho(a, n - 1, domain_size) + _rho(b, n - 1, domain_size))
    return best


def rho(system: SetSystem, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _rho(frozenset(system.family), n, system.domain_size)


@lru_cache(maxsize=1 << 20)
def _msz(fam: frozenset[int], d: int) -> int:
    """Most vertices in a full canonical tree of depth at most ``d``."""
    if d == 0 or len(fam) == 1:
        return 1
    best = 1
    for x in members(_split_mask(fam)):
        a, b = _halves(fam, x)
        best = max(best, 1 + _msz(a, d - 1) + _msz(b, d - 1))
    return best


def max_full_size(system: SetSystem, d: int) -> int:
    if not system.family:
        raise ValueError("family is empty")
    return _msz(frozenset(system.family), d)


def sigma(system: SetSystem, n: int) -> int | None:
    """Least depth of a full canonical tree with at least ``n`` vertices; None if unattainable."""
    if not system.family:
        raise ValueError("sigma is undefined for an empty family")
    if n < 1:
        raise ValueError("n must be at least 1")
    fam = frozenset(system.family)
    # a full canonical tree has at most |F| leaves, hence depth at most |F| - 1
    for d in range(len(fam)):
        if _msz(fam, d) >= n:
            return d
    return None


def sigma_lower_bound(n: int, k: int) -> int:
    """Smallest integer D with (D + 2) ** (k + 1) >= n, i.e. ceil(n ** (1/(k+1))) - 2."""
    d = -2
    while (d + 2) ** (k + 1) < n:
        d += 1
    return d


def vc_dim(system: SetSystem) -> int:
    fam = system.family
    if not fam:
        return -1
    best = 0
    for t in range(1, len(fam).bit_length()):
        if t > system.domain_size:
            break
        found = False
        for sub in combinations(range(system.domain_size), t):
            a = sum(1 << x for x in sub)
            if len({s & a for s in fam}) == 1 << t:
                found = True
                break
        if not found:
            break
        best = t
    return best


def dual_dim(system: SetSystem) -> int:
    return thicket_dim(dualize(system))


def dual_rho(system: SetSystem, n: int) -> int:
    return rho(dualize(system), n)


# --- brute-force oracles -----------------------------------------------------


class _Labelings:
    """Every labeling of the balanced depth-``depth`` tree, in heap vertex order."""

    def __init__(self, domain_size: int, depth: int):
        self.domain_size = domain_size
        self.depth = depth
        width = (1 << depth) - 1
        count = domain_size**width
        self.labels = (
            np.indices((domain_size,) * width, dtype=np.int8).reshape(width, count).T
            if width
            else np.zeros((1, 0), dtype=np.int8)
        )
        self.dtype = next(t for t in (np.uint8, np.uint16, np.uint32, np.uint64) if np.dtype(t).itemsize * 8 >= 1 << depth)
        self._columns: dict[int, np.ndarray] = {}

    def leaf_bits(self, subset: int) -> np.ndarray:
        """For every labeling, ``1 << leaf`` where ``leaf`` is the one ``subset`` is traced to."""
        col = self._columns.get(subset)
        if col is None:
            member = np.array([(subset >> x) & 1 for x in range(self.domain_size)], dtype=bool)
            rows = np.arange(self.labels.shape[0])
            pos = np.zeros(self.labels.shape[0], dtype=np.int64)
            for level in range(self.depth):
                lab = self.labels[rows, (1 << level) - 1 + pos]
                pos = 2 * pos + (~member[lab]).astype(np.int64)
            col = (np.ones(1, dtype=self.dtype) << pos.astype(self.dtype)).astype(self.dtype)
            self._columns[subset] = col
        return col


@lru_cache(maxsize=6)
def _labelings(domain_size: int, depth: int) -> _Labelings:
    return _Labelings(domain_size, depth)


def _realized_counts(system: SetSystem, n: int, budget: int) -> np.ndarray:
    count = system.domain_size ** ((1 << n) - 1)
    if count > budget:
        raise BudgetExceeded(f"{count} labelings of depth {n} exceed budget {budget}")
    if n > 6:
        raise BudgetExceeded("brute force supports depth at most 6")
    if not system.family or count == 0:
        return np.zeros(max(count, 1), dtype=np.int64)
    table = _labelings(system.domain_size, n)
    acc = np.zeros(table.labels.shape[0], dtype=table.dtype)
    for s in system.family:
        acc |= table.leaf_bits(s)
    return np.bitwise_count(acc)


def rho_bruteforce(system: SetSystem, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Maximum realized-leaf count over every labeling of the balanced depth-``n`` tree."""
    if not system.family:
        return 0
    if n == 0:
        return 1
    if system.domain_size == 0:
        return 0
    return int(_realized_counts(system, n, budget).max())


def thicket_dim_bruteforce(system: SetSystem, max_depth: int, budget: int = DEFAULT_BUDGET) -> int:
    if not system.family:
        return -1
    best = 0
    for d in range(1, max_depth + 1):
        if len(system.family) < 1 << d:
            break
        if rho_bruteforce(system, d, budget) < 1 << d:
            break  # every subtree of a full tree is full
        best = d
    return best


# --- Sauer-Shelah certification ------------------------------------------------


@dataclass
class ShatterTable:
    entries: dict[int, int]
    dim: int
    phi_bounds: dict[int, int]
    family_size: int = 0
    violations: list[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "dim": self.dim,
            "family_size": self.family_size,
            "rho": [self.entries[n] for n in sorted(self.entries)],
            "phi": [self.phi_bounds[n] for n in sorted(self.phi_bounds)],
        }


def sauer_shelah_report(system: SetSystem, n_max: int, strict: bool = True) -> ShatterTable:
    if n_max > MAX_N:
        raise ValueError(f"n_max above {MAX_N}")
    dim = thicket_dim(system)
    m = len(system.family)
    table = ShatterTable({}, dim, {}, m)
    for n in range(n_max + 1):
        r = rho(system, n)
        table.entries[n] = r
        table.phi_bounds[n] = phi(n, dim)
        if n <= dim and r != 1 << n:
            table.violations.append(f"rho({n})={r} but dim={dim} forces 2^{n}")
        if r > phi(n, dim):
            table.violations.append(f"rho({n})={r} exceeds phi({n},{dim})={phi(n, dim)}")
        if r > min(1 << n, m):
            table.violations.append(f"rho({n})={r} exceeds min(2^{n}, |F|)")
    if strict and table.violations:
        raise ConsistencyError("; ".join(table.violations))
    return table


# --- integer-labeled trees ---------------------------------------------------------


def _valid_labelings(depth: int, root: int):
    """Yield every labeling (heap order) of a balanced tree obeying the parent/child rules."""
    if depth == 0:
        yield (root,)
        return
    lo = -1
    for y in range(lo, root + 1):
        for z in range(lo, root + 1):
            if root >= 0 and min(y, z) >= root:
                continue
            for left in _valid_labelings(depth - 1, y):
                for right in _valid_labelings(depth - 1, z):
                    yield (root,) + _interleave(left, right)


def _interleave(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    start, width = 0, 1
    while start < len(left):
        out.extend(left[start : start + width])
        out.extend(right[start : start + width])
        start += width
        width *= 2
    return tuple(out)


def integer_tree_leaf_bound(depth: int, k: int) -> tuple[int, int]:
    """Exhaustive check of the integer-labeled tree leaf bound.

    Returns (labelings examined, most nonnegative leaves seen) over roots -1..k.
    """
    first_leaf = (1 << depth) - 1
    seen = best = 0
    for root in range(-1, k + 1):
        for lab in _valid_labelings(depth, root):
            seen += 1
            best = max(best, sum(v >= 0 for v in lab[first_leaf:]))
    return seen, best


# --- density probes ----------------------------------------------------------------


@dataclass
class DensityProbe:
    generator_id: str
    sizes: list[int]
    rho_values: list[int]
    exact: list[int]
    slope_estimate: float | None
    residual: float | None

    def to_record(self) -> dict:
        return {
            "generator": self.generator_id,
            "sizes": self.sizes,
            "rho": self.rho_values,
            "exact_density": self.exact,
            "slope_estimate": self.slope_estimate,
            "fit_residual": self.residual,
            "note": "slope is an asymptotic estimate for the limiting family, not the density of any instance",
        }


def exact_density(system: SetSystem) -> int:
    """Density of a finite system: -1 for an empty family, otherwise 0."""
    return -1 if not system.family else 0


def density_probe(generator_id: str, params) -> DensityProbe:
    """Fit log rho(p) against log p, where instance p of the generator is evaluated at depth p."""
    from .generators import GENERATORS

    try:
        gen = GENERATORS[generator_id]
    except KeyError:
        raise ValueError(f"unknown generator {generator_id!r}; known: {sorted(GENERATORS)}") from None
    sizes = list(params)
    systems = [gen(p) for p in sizes]
    values = [rho(s, p) for s, p in zip(systems, sizes)]
    exact = [exact_density(s) for s in systems]
    pts = [(math.log(p), math.log(r)) for p, r in zip(sizes, values) if p > 0 and r > 0]
    slope = resid = None
    if len(pts) >= 2 and len({x for x, _ in pts}) >= 2:
        xs, ys = np.array(pts).T
        coef, res, *_ = np.polyfit(xs, ys, 1, full=True)
        slope = float(coef[0])
        resid = float(res[0]) if len(res) else 0.0
    return DensityProbe(generator_id, sizes, values, exact, slope, resid)


def dim_witness(system: SetSystem) -> dict[str, int] | None:
    """Labels of a full balanced tree of depth ``thicket_dim(system)``; None for an empty family."""
    fam = frozenset(system.family)
    if not fam:
        return None
    labels: dict[str, int] = {}

    def build(v: str, sub: frozenset[int], d: int) -> None:
        if d == 0:
            return
        for x in members(_split_mask(sub)):
            a, b = _halves(sub, x)
            if min(_dim(a), _dim(b)) >= d - 1:
                labels[v] = x
                build(v + "0", a, d - 1)
                build(v + "1", b, d - 1)
                return
        raise ConsistencyError("dimension recursion has no witnessing split")

    build("", fam, _dim(fam))
    return labels
