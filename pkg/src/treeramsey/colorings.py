"""Colorings of k-subsets: materialized base tables and stepped-up towers.

A base coloring assigns a color to every r-subset of [n], materialized
as a flat table keyed by colex rank.  A stepped coloring lifts a
coloring of (k-1)-subsets of [N] to a 4-coloring of k-subsets of the
2**N leaves of the depth-N tree: combs are colored through the
projection, non-combs (k >= 4 only) by their split type.  Only the base
table is ever materialized; stepped colorings evaluate per query.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .trees import LeafSet, TreeParams

BINARY = "binary"
Z4 = "z4"

_PALETTES = {BINARY: frozenset({0, 1}), Z4: frozenset({0, 1, 2, 3})}


def colex_rank(subset: Sequence[int]) -> int:
    """Rank of a sorted subset of positive integers in colex order."""
    return sum(math.comb(a - 1, i + 1) for i, a in enumerate(subset))


def subsets_colex(n: int, r: int):
    """All r-subsets of [n] in colex order."""
    if r == 0:
        yield ()
        return
    for last in range(r, n + 1):
        for rest in subsets_colex(last - 1, r - 1):
            yield rest + (last,)


@dataclass(frozen=True)
class BaseColoring:
    """Total coloring of the r-subsets of [n], one table entry per subset."""

    uniformity: int
    ground_size: int
    palette: str
    table: tuple[int, ...]

    def __post_init__(self):
        if self.palette not in _PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}")
        expected = math.comb(self.ground_size, self.uniformity)
        if len(self.table) != expected:
            raise ValueError(
                f"table has {len(self.table)} entries, expected "
                f"C({self.ground_size},{self.uniformity}) = {expected}"
            )
        allowed = _PALETTES[self.palette]
        for c in self.table:
            if c not in allowed:
                raise ValueError(f"color {c} outside palette {self.palette}")

    def color_of(self, subset: Sequence[int]) -> int:
        s = tuple(sorted(subset))
        if len(s) != self.uniformity:
            raise ValueError(
                f"expected a {self.uniformity}-subset, got {len(s)} elements"
            )
        if len(set(s)) != len(s) or s[0] < 1 or s[-1] > self.ground_size:
            raise ValueError(f"{subset} is not a subset of [{self.ground_size}]")
        return self.table[colex_rank(s)]

    @classmethod
    def from_function(cls, uniformity, ground_size, palette, fn) -> "BaseColoring":
        table = tuple(fn(s) for s in subsets_colex(ground_size, uniformity))
        return cls(uniformity, ground_size, palette, table)


@dataclass(frozen=True)
class SteppedColoring:
    """4-coloring of k-subsets of [2**N] lifted from a coloring of [N]^(k-1).

    For k = 3 the inner palette must be binary: a left comb takes the
    inner color of its projection, a right comb takes 3 minus it.  For
    k >= 4 the comb rules swap (left comb -> 3 - inner, right comb ->
    inner) and splits take fixed colors 0 (balanced), 1 ((k-1,1)) and
    2 ((1,k-1)).
    """

    inner: Union[BaseColoring, "SteppedColoring"]

    def __post_init__(self):
        if self.uniformity == 3 and self.inner_palette != BINARY:
            raise ValueError("uniformity-3 stepping requires a binary inner coloring")

    @property
    def uniformity(self) -> int:
        return self.inner.uniformity + 1

    @property
    def depth(self) -> int:
        return self.inner.ground_size

    @property
    def ground_size(self) -> int:
        return 1 << self.inner.ground_size

    @property
    def inner_palette(self) -> str:
        return self.inner.palette if isinstance(self.inner, BaseColoring) else Z4

    @property
    def palette(self) -> str:
        return Z4

    @property
    def params(self) -> TreeParams:
        return TreeParams(self.depth)

    def color_of(self, X) -> int:
        elems = X.elements if isinstance(X, LeafSet) else tuple(sorted(X))
        if len(elems) != self.uniformity:
            raise ValueError(
                f"expected a {self.uniformity}-subset, got {len(elems)} elements"
            )
        if len(set(elems)) != len(elems):
            raise ValueError("leaf set has repeated elements")
        if elems[0] < 1 or elems[-1] > self.ground_size:
            raise ValueError(f"leaves out of range [1, {self.ground_size}]")
        return self._eval(elems)

    def _eval(self, elems: tuple[int, ...]) -> int:
        # Hot path: callers guarantee a sorted, in-range, duplicate-free
        # tuple of the right arity.
        depth = self.inner.ground_size
        levels = [
            depth - ((a - 1) ^ (b - 1)).bit_length() + 1
            for a, b in zip(elems, elems[1:])
        ]
        k = len(elems)
        decreasing = all(a > b for a, b in zip(levels, levels[1:]))
        increasing = not decreasing and all(
            a < b for a, b in zip(levels, levels[1:])
        )
        if decreasing or increasing:
            proj = tuple(sorted(levels))
            inner = self.inner
            c = (
                inner.table[colex_rank(proj)]
                if isinstance(inner, BaseColoring)
                else inner._eval(proj)
            )
            if k == 3:
                return c if decreasing else 3 - c
            return 3 - c if decreasing else c
        # Non-comb: the minimum consecutive level is attained exactly once
        # and marks the boundary between left and right descendants.
        left = levels.index(min(levels)) + 1
        right = k - left
        if left >= 2 and right >= 2:
            return 0
        return 1 if right == 1 else 2


def reflect_leaf(x: int, params: TreeParams) -> int:
    """Order-reversing involution of the leaves: x -> 2**N + 1 - x."""
    params.check_leaf(x)
    return params.num_leaves + 1 - x


def reflect_set(X: Sequence[int], params: TreeParams) -> tuple[int, ...]:
    return tuple(sorted(params.num_leaves + 1 - x for x in X))


@dataclass(frozen=True)
class ColoringTower:
    """Iterated stepping-up from a base table to a target uniformity."""

    base: BaseColoring
    levels: tuple[SteppedColoring, ...]

    @property
    def top(self) -> SteppedColoring:
        return self.levels[-1]


DEFAULT_TOWER_CAP = 1 << 20


def build_tower(
    base: BaseColoring, target_k: int, cap: int = DEFAULT_TOWER_CAP
) -> ColoringTower:
    """Stack stepped colorings of uniformity base.uniformity+1 .. target_k.

    Refuses when any level's ground size (including the top) would
    exceed cap, naming the offending level.
    """
    if base.uniformity < 2:
        raise ValueError("base uniformity must be >= 2")
    if target_k <= base.uniformity:
        raise ValueError(
            f"target uniformity {target_k} must exceed base uniformity {base.uniformity}"
        )
    levels = []
    current: Union[BaseColoring, SteppedColoring] = base
    for k in range(base.uniformity + 1, target_k + 1):
        ground = 1 << current.ground_size
        if ground > cap:
            raise ValueError(
                f"ground size 2**{current.ground_size} at uniformity {k} "
                f"exceeds cap {cap}"
            )
        current = SteppedColoring(current)
        levels.append(current)
    return ColoringTower(base, tuple(levels))


class CliqueWitness(NamedTuple):
    vertices: tuple[int, ...]
    color: int


def verify_no_mono_clique(c: BaseColoring, t: int) -> Optional[CliqueWitness]:
    """Exhaustive check for a monochromatic complete t-subset.

    Returns None when clean, else the lexicographically least witness.
    """
    import itertools

    if not c.uniformity <= t <= c.ground_size:
        raise ValueError(
            f"clique size {t} must lie in [{c.uniformity}, {c.ground_size}]"
        )
    for clique in itertools.combinations(range(1, c.ground_size + 1), t):
        colors = {c.color_of(s) for s in itertools.combinations(clique, c.uniformity)}
        if len(colors) == 1:
            return CliqueWitness(clique, colors.pop())
    return None


def search_base_coloring(
    n: int, t: int, seed: int, budget: int
) -> Optional[BaseColoring]:
    """Seeded random search for a 2-coloring of [n]^(2) with no mono K_t.

    Each restart draws a fair coloring and verifies it exhaustively;
    returns None after budget failed attempts.  Deterministic in
    (n, t, seed, budget).
    """
    if not n >= t >= 3:
        raise ValueError(f"need n >= t >= 3, got n={n}, t={t}")
    rng = random.Random(f"base-coloring:{n}:{t}:{seed}")
    num_edges = math.comb(n, 2)
    for _ in range(budget):
        table = tuple(rng.randrange(2) for _ in range(num_edges))
        candidate = BaseColoring(2, n, BINARY, table)
        if verify_no_mono_clique(candidate, t) is None:
            return candidate
    return None


def export_coloring(c: BaseColoring) -> str:
    """Canonical text form: header line, then one colex-ordered line per subset."""
    lines = [f"coloring {c.uniformity} {c.ground_size} {c.palette}"]
    for subset in subsets_colex(c.ground_size, c.uniformity):
        lines.append(" ".join(map(str, subset)) + f" {c.table[colex_rank(subset)]}")
    return "\n".join(lines) + "\n"


def import_coloring(text: Union[str, bytes]) -> BaseColoring:
    """Parse and validate the text form; inverse of export_coloring."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty coloring file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "coloring":
        raise ValueError(f"malformed header: {lines[0]!r}")
    try:
        r, n = int(header[1]), int(header[2])
    except ValueError:
        raise ValueError(f"malformed header: {lines[0]!r}") from None
    palette = header[3]
    if palette not in _PALETTES:
        raise ValueError(f"unknown palette {palette!r}")
    expected = math.comb(n, r)
    if len(lines) - 1 != expected:
        raise ValueError(f"expected {expected} subset lines, found {len(lines) - 1}")
    table: list[Optional[int]] = [None] * expected
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != r + 1:
            raise ValueError(f"arity mismatch on line {ln!r}: expected {r} vertices")
        vertices = tuple(sorted(int(p) for p in parts[:r]))
        color = int(parts[r])
        if len(set(vertices)) != r or vertices[0] < 1 or vertices[-1] > n:
            raise ValueError(f"bad subset on line {ln!r}")
        if color not in _PALETTES[palette]:
            raise ValueError(f"color {color} outside palette {palette}")
        rank = colex_rank(vertices)
        if table[rank] is not None:
            raise ValueError(f"duplicate subset on line {ln!r}")
        table[rank] = color
    return BaseColoring(r, n, palette, tuple(table))  # type: ignore[arg-type]


def read_coloring(path) -> BaseColoring:
    with open(path, "r", encoding="utf-8") as fh:
        return import_coloring(fh.read())


def write_coloring(c: BaseColoring, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_coloring(c))
