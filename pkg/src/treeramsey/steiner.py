"""Partial Steiner systems: blow-ups, projective planes, and their gluing.

The blow-up takes the family's shape and replaces every distinguished
vertex by a class of m interchangeable vertices and every connector
vertex class V_J by one vertex per transversal of the classes indexed
by J, so each transversal extends to exactly one edge.  Copies of that
system are then placed on the lines of a projective plane of prime
order via independently seeded random injections; since two lines share
at most one point, the union stays a partial (k, k-1)-system.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import random
import time
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .families import (
    FLAVOR_G,
    FLAVOR_REVG,
    FamilySpec,
    OrderedHypergraph,
    canonical_member,
    connector_sets,
)
from .search import find_ordered_copy

SYSTEM_SCHEMA = "treeramsey/system/1"
PLANE_SCHEMA = "treeramsey/plane/1"
MC_SCHEMA = "treeramsey/mc-report/1"


def _shuffled(items: list, rng: random.Random) -> list:
    # Explicit Fisher-Yates so the draw sequence is pinned by this code,
    # not by the stdlib's shuffle implementation.
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rng.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


@dataclass(frozen=True)
class BlowupSystem:
    """The partitioned (k, k-1)-system with unique transversal extension.

    Vertices 1..vertex_count: first the classes V_1..V_n of size m, then
    one block of size m**(k-1) per connector set (colex order, I last),
    indexed by transversals in lexicographic order of class positions.
    """

    n: int
    k: int
    I: tuple[int, ...]
    m: int

    def __post_init__(self):
        if not self.n >= self.k >= 3:
            raise ValueError(f"need n >= k >= 3, got n={self.n}, k={self.k}")
        if self.m < 1:
            raise ValueError("class size m must be >= 1")
        I = tuple(self.I)
        object.__setattr__(self, "I", I)
        if len(I) != self.k - 1 or any(a >= b for a, b in zip(I, I[1:])):
            raise ValueError(f"I must be a sorted (k-1)-subset, got {I}")
        if 1 not in I or I[-1] > self.n:
            raise ValueError(f"I must contain 1 and lie in [n], got {I}")

    @functools.cached_property
    def omega(self) -> list[tuple[int, ...]]:
        return connector_sets(self.n, self.k) + [self.I]

    @functools.cached_property
    def _block_index(self) -> dict[tuple[int, ...], int]:
        return {J: idx for idx, J in enumerate(self.omega)}

    @property
    def block_size(self) -> int:
        return self.m ** (self.k - 1)

    @property
    def vertex_count(self) -> int:
        return self.m * self.n + self.block_size * len(self.omega)

    @property
    def edge_count(self) -> int:
        return self.block_size * len(self.omega)

    def class_range(self, i: int) -> range:
        """Vertices of the distinguished class V_i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"no class V_{i}")
        start = (i - 1) * self.m + 1
        return range(start, start + self.m)

    def block_range(self, J: Sequence[int]) -> range:
        """Vertices of the connector class V_J."""
        J = tuple(J)
        if J not in self._block_index:
            raise ValueError(f"{J} is not an edge index set of this system")
        start = self.m * self.n + self._block_index[J] * self.block_size + 1
        return range(start, start + self.block_size)

    def extend_transversal(self, J: Sequence[int], z: Sequence[int]) -> int:
        """The unique vertex of V_J extending transversal z to an edge."""
        J = tuple(J)
        if J not in self._block_index:
            raise ValueError(f"{J} is not an edge index set of this system")
        if len(z) != len(J):
            raise ValueError(f"transversal of {J} needs {len(J)} vertices")
        rank = 0
        for j, v in zip(J, z):
            r = self.class_range(j)
            if v not in r:
                raise ValueError(f"vertex {v} is not in class V_{j}")
            rank = rank * self.m + (v - r.start)
        return self.block_range(J).start + rank

    def iter_edges(self) -> Iterator[tuple[int, ...]]:
        for J in self.omega:
            ranges = [self.class_range(j) for j in J]
            for z in itertools.product(*ranges):
                yield tuple(sorted(z + (self.extend_transversal(J, z),)))

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.iter_edges())

    def to_json(self, include_edges: bool = True) -> dict:
        out = {
            "schema": SYSTEM_SCHEMA,
            "v": self.vertex_count,
            "k": self.k,
            "params": {"n": self.n, "k": self.k, "I": list(self.I), "m": self.m},
        }
        if include_edges:
            out["edges"] = [list(e) for e in self.iter_edges()]
        return out


def build_blowup(
    n: int, k: int, I: Sequence[int], m: Optional[int] = None
) -> BlowupSystem:
    """Blow-up with class size m; m defaults to n**(k+3)."""
    if m is None:
        m = n ** (k + 3)
    return BlowupSystem(n, k, tuple(I), m)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def next_prime_at_least(n: int) -> int:
    """Smallest prime >= n; always within [n, 2n] (checked)."""
    if n < 2:
        raise ValueError("need n >= 2")
    p = n
    while not _is_prime(p):
        p += 1
    assert p <= 2 * n, f"prime gap violation: {p} > 2*{n}"
    return p


@dataclass(frozen=True)
class ProjectivePlane:
    """Plane of prime order p: p**2+p+1 points, lines of p+1 points each."""

    order: int
    lines: tuple[tuple[int, ...], ...]

    @property
    def num_points(self) -> int:
        return self.order**2 + self.order + 1

    def to_json(self) -> dict:
        return {
            "schema": PLANE_SCHEMA,
            "order": self.order,
            "points": self.num_points,
            "lines": [list(line) for line in self.lines],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ProjectivePlane":
        allowed = {"schema", "order", "points", "lines"}
        unknown = set(obj) - allowed
        if unknown:
            raise ValueError(f"unknown fields in plane JSON: {sorted(unknown)}")
        if obj.get("schema") != PLANE_SCHEMA:
            raise ValueError(f"expected schema {PLANE_SCHEMA}")
        plane = cls(obj["order"], tuple(tuple(line) for line in obj["lines"]))
        if obj["points"] != plane.num_points:
            raise ValueError("point count inconsistent with order")
        return plane


def build_projective_plane(p: int) -> ProjectivePlane:
    """The plane over the p-element field, prime p only.

    Points are the 1-dimensional subspaces of a 3-dimensional vector
    space, numbered 1.. p**2+p+1 by canonical representative; a line
    collects the points orthogonal to one such representative.
    """
    if not _is_prime(p):
        raise ValueError(
            f"unsupported order {p}: only prime orders are constructed"
        )
    reps = (
        [(1, y, z) for y in range(p) for z in range(p)]
        + [(0, 1, z) for z in range(p)]
        + [(0, 0, 1)]
    )
    point_id = {rep: i + 1 for i, rep in enumerate(reps)}
    lines = []
    for a, b, c in reps:
        line = tuple(
            sorted(
                point_id[rep]
                for rep in reps
                if (a * rep[0] + b * rep[1] + c * rep[2]) % p == 0
            )
        )
        lines.append(line)
    return ProjectivePlane(p, tuple(sorted(lines)))


def validate_projective_plane(plane: ProjectivePlane) -> None:
    """Raise unless the incidence axioms hold (counts, pair cover, meets)."""
    expected = plane.num_points
    if len(plane.lines) != expected:
        raise ValueError(f"{len(plane.lines)} lines, expected {expected}")
    for line in plane.lines:
        if len(line) != plane.order + 1:
            raise ValueError(f"line {line} has {len(line)} points")
        if line[0] < 1 or line[-1] > expected:
            raise ValueError(f"line {line} out of range")
    pair_lines: dict[tuple[int, int], int] = {}
    for line in plane.lines:
        for pair in itertools.combinations(line, 2):
            pair_lines[pair] = pair_lines.get(pair, 0) + 1
    total_pairs = math.comb(expected, 2)
    if len(pair_lines) != total_pairs or any(c != 1 for c in pair_lines.values()):
        raise ValueError("some point pair is not covered exactly once")
    for l1, l2 in itertools.combinations(plane.lines, 2):
        if len(set(l1) & set(l2)) != 1:
            raise ValueError(f"lines {l1} and {l2} do not meet in one point")


class SteinerWitness(NamedTuple):
    first: tuple[int, ...]
    second: tuple[int, ...]
    shared: tuple[int, ...]


def is_partial_steiner(system, ell: int) -> Optional[SteinerWitness]:
    """Least pair of edges sharing an ell-subset, or None when the
    system is a partial (k, ell)-system."""
    edges = sorted(system.edges if hasattr(system, "edges") else system)
    if edges and ell >= len(edges[0]):
        raise ValueError(f"ell must be below the uniformity, got {ell}")
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    collisions = []
    for e in edges:
        for shared in itertools.combinations(e, ell):
            if shared in seen and seen[shared] != e:
                collisions.append(SteinerWitness(seen[shared], e, shared))
            else:
                seen[shared] = e
    if not collisions:
        return None
    return min(collisions, key=lambda w: (w.shared, w.first, w.second))


@dataclass(frozen=True)
class SteinerSystem:
    """The glued system on the plane's points, with per-edge provenance."""

    v: int
    k: int
    edges: tuple[tuple[int, ...], ...]
    provenance: dict[tuple[int, ...], tuple[tuple[int, tuple[int, ...]], ...]]

    @property
    def vertex_count(self) -> int:
        return self.v

    def to_json(self, include_provenance: bool = True) -> dict:
        out = {
            "schema": SYSTEM_SCHEMA,
            "v": self.v,
            "k": self.k,
            "edges": [list(e) for e in self.edges],
        }
        if include_provenance:
            out["provenance"] = [
                {
                    "edge": list(e),
                    "copies": [
                        {"line": line, "source": list(src)} for line, src in sources
                    ],
                }
                for e, sources in sorted(self.provenance.items())
            ]
        return out


def assemble_h(system, plane: ProjectivePlane, seed: int) -> SteinerSystem:
    """Union of one randomly placed copy of the padded system per line.

    The system is padded with isolated vertices up to p, then each line
    receives it through a seeded random injection of [p] into the
    line's p+1 points (per-line sub-seeds are derived by counter, so
    line iteration order does not matter).  Duplicate edges across
    lines cannot arise (two lines share one point) but would be merged.
    """
    p = plane.order
    v_sys = system.vertex_count
    if p < v_sys:
        raise ValueError(
            f"plane of order {p} is too small for a system on {v_sys} vertices"
        )
    edges = list(system.iter_edges() if hasattr(system, "iter_edges") else system.edges)
    merged: dict[tuple[int, ...], list[tuple[int, tuple[int, ...]]]] = {}
    for line_id, line in enumerate(plane.lines):
        rng = random.Random(f"assemble:{seed}:{line_id}")
        placed = _shuffled(list(line), rng)  # positions 0..p-1 host vertices 1..p
        for e in edges:
            image = tuple(sorted(placed[v - 1] for v in e))
            merged.setdefault(image, []).append((line_id, e))
    out_edges = tuple(sorted(merged))
    provenance = {e: tuple(sources) for e, sources in merged.items()}
    return SteinerSystem(plane.num_points, system.k, out_edges, provenance)


@dataclass(frozen=True)
class MonteCarloReport:
    spec: FamilySpec
    trials: int
    seed: int
    found: dict[str, int]
    failures: tuple[dict, ...]
    trial_ms: tuple[float, ...]

    def found_fraction(self, flavor: str) -> float:
        return self.found[flavor] / self.trials

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "schema": MC_SCHEMA,
            "spec": {
                "k": self.spec.k,
                "n": self.spec.n,
                "I": list(self.spec.I),
            },
            "trials": self.trials,
            "seed": self.seed,
            "found_fraction": {
                flavor: self.found[flavor] / self.trials for flavor in sorted(self.found)
            },
            "failures": [dict(f) for f in self.failures],
        }
        if include_timing:
            out["trial_ms"] = list(self.trial_ms)
        return out


def ordering_as_hypergraph(system, ordering: Sequence[int]) -> OrderedHypergraph:
    """Relabel a system's vertices by their positions in the ordering."""
    v = system.vertex_count
    if sorted(ordering) != list(range(1, v + 1)):
        raise ValueError("ordering must be a permutation of the vertices")
    position = {orig: idx + 1 for idx, orig in enumerate(ordering)}
    edges = system.iter_edges() if hasattr(system, "iter_edges") else system.edges
    relabeled = tuple(sorted(tuple(sorted(position[x] for x in e)) for e in edges))
    return OrderedHypergraph(v, relabeled)


def _run_ordering_trial(args):
    system, targets, seed, t = args
    rng = random.Random(f"ordering:{seed}:{t}")
    ordering = _shuffled(list(range(1, system.vertex_count + 1)), rng)
    start = time.monotonic()
    host = ordering_as_hypergraph(system, ordering)
    hits = {
        flavor: find_ordered_copy(host, target) is not None
        for flavor, target in targets.items()
    }
    return t, hits, ordering, (time.monotonic() - start) * 1000.0


def sample_ordering_and_search(
    system, spec: FamilySpec, trials: int, seed: int, workers: int = 1
) -> MonteCarloReport:
    """Random vertex orderings searched for canonical family copies.

    Each trial draws a seeded uniform ordering, then looks for the
    canonical member of the G flavor and of the revG flavor as ordered
    subgraphs.  Failing orderings are kept verbatim for replay.  Trial
    seeds are derived by counter, so the report does not depend on the
    worker count.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if spec.flavor not in (FLAVOR_G, FLAVOR_REVG):
        raise ValueError(f"ordering experiment needs flavor G or revG, got {spec.flavor}")
    if spec.k != system.k:
        raise ValueError(
            f"spec mismatch: uniformity {spec.k} vs system uniformity {system.k}"
        )
    system_n = getattr(system, "n", None)
    if system_n is not None and spec.n > system_n:
        raise ValueError(
            f"spec mismatch: n={spec.n} exceeds the system's class count {system_n}"
        )
    targets = {
        FLAVOR_G: canonical_member(spec.with_flavor(FLAVOR_G)),
        FLAVOR_REVG: canonical_member(spec.with_flavor(FLAVOR_REVG)),
    }
    tasks = [(system, targets, seed, t) for t in range(trials)]
    if workers <= 1:
        results = [_run_ordering_trial(task) for task in tasks]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_ordering_trial, tasks))
    results.sort(key=lambda r: r[0])

    found = {FLAVOR_G: 0, FLAVOR_REVG: 0}
    failures = []
    trial_ms = []
    for t, hits, ordering, ms in results:
        for flavor in (FLAVOR_G, FLAVOR_REVG):
            if hits[flavor]:
                found[flavor] += 1
            elif not any(f["flavor"] == flavor for f in failures):
                # only the first failing ordering per flavor is kept for replay
                failures.append({"trial": t, "flavor": flavor, "ordering": ordering})
        trial_ms.append(ms)
    return MonteCarloReport(spec, trials, seed, found, tuple(failures), tuple(trial_ms))


def read_system(path):
    """Load a system file; returns (OrderedHypergraph-like edges, k, params)."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    allowed = {"schema", "v", "k", "edges", "provenance", "params"}
    unknown = set(obj) - allowed
    if unknown:
        raise ValueError(f"unknown fields in system JSON: {sorted(unknown)}")
    if obj.get("schema") != SYSTEM_SCHEMA:
        raise ValueError(f"expected schema {SYSTEM_SCHEMA}")
    return obj
