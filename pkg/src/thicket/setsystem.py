"""Finite set systems stored as bitset rows of an incidence matrix.

Elements of the ground set are the integers ``0..domain_size-1`` and every set
of the family is an ``int`` bitmask. Subfamilies are addressed either as tuples
of masks or as bitmasks over family indices (see :func:`column_masks`).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property


class SetSystemError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def members(mask: int) -> list[int]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


@dataclass(frozen=True)
class SetSystem:
    domain_size: int
    family: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.domain_size < 0:
            raise SetSystemError("domain_size must be nonnegative")
        limit = 1 << self.domain_size
        seen = set()
        for i, s in enumerate(self.family):
            if s < 0 or s >= limit:
                raise SetSystemError(f"set {i} has an element outside 0..{self.domain_size - 1}")
            if s in seen:
                raise SetSystemError(f"set {i} duplicates an earlier set")
            seen.add(s)
        if self.labels is not None and len(self.labels) != len(self.family):
            raise SetSystemError("labels must match the family length")

    def __len__(self) -> int:
        return len(self.family)

    @property
    def full_mask(self) -> int:
        return (1 << self.domain_size) - 1

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return column_masks(self)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(members(s)) for s in self.family]

    def index_of(self, subset: int | Iterable[int]) -> int:
        mask = subset if isinstance(subset, int) else mask_of(subset)
        return self.family.index(mask)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, members(s))) + "}" for s in self.family)
        return f"SetSystem(n={self.domain_size}, [{body}])"


def from_masks(domain_size: int, masks: Iterable[int], labels: Sequence[str] | None = None) -> SetSystem:
    """Build a system from bitmasks, dropping repeated sets (first occurrence wins)."""
    limit = 1 << domain_size
    fam: list[int] = []
    kept_labels: list[str] = []
    seen = set()
    dropped = 0
    for i, m in enumerate(masks):
        if m < 0 or m >= limit:
            bad = [x for x in members(m) if x >= domain_size] if m >= 0 else [m]
            raise SetSystemError(f"set {i}: element {bad[0]} out of range 0..{domain_size - 1}")
        if m in seen:
            dropped += 1
            continue
        seen.add(m)
        fam.append(m)
        if labels is not None:
            kept_labels.append(labels[i])
    return SetSystem(domain_size, tuple(fam), tuple(kept_labels) if labels is not None else None, dropped)


def build_system(domain_size: int, sets: Iterable[Iterable[int]], labels: Sequence[str] | None = None) -> SetSystem:
    masks = []
    for i, s in enumerate(sets):
        s = list(s)
        for x in s:
            if not 0 <= x < domain_size:
                raise SetSystemError(f"set {i}: element {x} out of range 0..{domain_size - 1}")
        masks.append(mask_of(s))
    return from_masks(domain_size, masks, labels)


def column_masks(system: SetSystem) -> tuple[int, ...]:
    """For each element x, the bitmask of family indices whose set contains x."""
    cols = [0] * system.domain_size
    for i, s in enumerate(system.family):
        for x in members(s):
            cols[x] |= 1 << i
    return tuple(cols)


def restrict(system: SetSystem, x: int, keep: str = "in") -> SetSystem:
    if not 0 <= x < system.domain_size:
        raise SetSystemError(f"element {x} out of range 0..{system.domain_size - 1}")
    if keep not in ("in", "out"):
        raise ValueError("keep must be 'in' or 'out'")
    want = 1 if keep == "in" else 0
    idx = [i for i, s in enumerate(system.family) if (s >> x) & 1 == want]
    labels = tuple(system.labels[i] for i in idx) if system.labels is not None else None
    return SetSystem(system.domain_size, tuple(system.family[i] for i in idx), labels)


def dualize(system: SetSystem) -> SetSystem:
    """Transpose the incidence matrix; identical element profiles collapse."""
    return from_masks(len(system.family), column_masks(system))


def union_systems(a: SetSystem, b: SetSystem) -> SetSystem:
    if a.domain_size != b.domain_size:
        raise SetSystemError(f"domain sizes differ: {a.domain_size} != {b.domain_size}")
    return from_masks(a.domain_size, a.family + b.family)


def double_dual_isomorphism(system: SetSystem) -> tuple[list[int], list[int]]:
    """Maps (element -> element, set index -> set index) from ``system`` into its double dual.

    Elements sharing a membership profile land on the same double-dual element.
    """
    dual = dualize(system)
    cols = column_masks(system)
    elem_map = [dual.family.index(c) for c in cols]
    dd = dualize(dual)
    dual_cols = column_masks(dual)
    # set i of the original is dual element i; its profile in the dual is a set of dd
    set_map = [dd.family.index(dual_cols[i]) for i in range(len(system.family))]
    return elem_map, set_map


def check_isomorphism(a: SetSystem, b: SetSystem, elem_map: Sequence[int], set_map: Sequence[int]) -> bool:
    """True when membership is preserved and ``set_map`` is a bijection of families."""
    if sorted(set_map) != list(range(len(b.family))) or len(set_map) != len(a.family):
        return False
    if any(not 0 <= e < b.domain_size for e in elem_map):
        return False
    if a.domain_size and len(set(elem_map)) != b.domain_size:
        return False
    for i, s in enumerate(a.family):
        t = b.family[set_map[i]]
        for x in range(a.domain_size):
            if ((s >> x) & 1) != ((t >> elem_map[x]) & 1):
                return False
    return True


def powerset_system(n: int) -> SetSystem:
    return from_masks(n, range(1 << n))


def singletons_system(n: int) -> SetSystem:
    return from_masks(n, [1 << x for x in range(n)])


# --- incidence-matrix text format -------------------------------------------------


def parse_incidence(text: str) -> SetSystem:
    lines = text.splitlines()
    rows = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise ParseError(1, "empty input")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(lineno, "expected header 'n m'")
    n, m = int(parts[0]), int(parts[1])
    body = rows[1:]
    if n == 0:
        # rows over an empty domain are blank lines
        body = [(i + 1, lines[i]) for i in range(lineno, min(lineno + m, len(lines)))]
        extra = [i + 1 for i in range(lineno + m, len(lines)) if lines[i].strip()]
        if extra:
            raise ParseError(extra[0], "unexpected line after the set rows")
    if len(body) != m:
        raise ParseError(body[-1][0] if body else lineno, f"expected {m} set lines, found {len(body)}")
    masks, names = [], []
    for lineno, ln in body:
        row, _, name = ln.partition("#")
        row = row.strip()
        if len(row) != n or set(row) - {"0", "1"}:
            raise ParseError(lineno, f"expected {n} characters over {{0,1}}, got {row!r}")
        masks.append(sum(1 << x for x, ch in enumerate(row) if ch == "1"))
        names.append(name.strip())
    labels = names if any(names) else None
    try:
        return from_masks(n, masks, labels)
    except SetSystemError as e:
        raise ParseError(lineno, str(e)) from e


def format_incidence(system: SetSystem) -> str:
    out = [f"{system.domain_size} {len(system.family)}"]
    for i, s in enumerate(system.family):
        row = "".join("1" if (s >> x) & 1 else "0" for x in range(system.domain_size))
        if system.labels is not None and system.labels[i]:
            row += f"  # {system.labels[i]}"
        out.append(row)
    return "\n".join(out) + "\n"
