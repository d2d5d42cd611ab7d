"""Matroids on small ground sets, stored as sets of basis bit masks."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .linalg import det, to_fraction_matrix

MAX_GROUND = 16


class MatroidError(ValueError):
    pass


class ExchangeAxiomViolation(MatroidError):
    def __init__(self, b1, b2, e):
        self.b1, self.b2, self.e = b1, b2, e
        super().__init__(
            f"basis exchange fails for B1={sorted(b1, key=str)}, "
            f"B2={sorted(b2, key=str)}, e={e!r}"
        )


class RankDeficient(MatroidError):
    pass


class NotCircuitHyperplane(MatroidError):
    pass


class UnknownName(MatroidError, KeyError):
    pass


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its bases.

    ``ground`` is an ordered tuple of labels; element ``ground[i]`` is bit
    ``i`` of every mask.  Construct through :func:`matroid_from_bases` when
    the exchange axiom still needs checking.
    """

    ground: tuple
    bases: frozenset
    _rank_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "bases", frozenset(self.bases))
        if len(self.ground) > MAX_GROUND:
            raise MatroidError(f"ground sets are capped at {MAX_GROUND} elements")
        if len(set(self.ground)) != len(self.ground):
            raise MatroidError("duplicate ground labels")
        if not self.bases:
            raise MatroidError("a matroid needs at least one basis")
        sizes = {popcount(b) for b in self.bases}
        if len(sizes) != 1:
            raise MatroidError("bases are not equicardinal")
        if any(b >> len(self.ground) for b in self.bases):
            raise MatroidError("basis mask outside the ground set")

    @property
    def rank_d(self) -> int:
        return popcount(next(iter(self.bases)))

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict:
        return {label: i for i, label in enumerate(self.ground)}

    def mask(self, subset: Iterable[Hashable]) -> int:
        out = 0
        for label in subset:
            try:
                out |= 1 << self._index[label]
            except KeyError:
                raise MatroidError(f"{label!r} is not in the ground set") from None
        return out

    def labels(self, mask: int) -> tuple:
        return tuple(self.ground[i] for i in mask_indices(mask))

    @cached_property
    def basis_list(self) -> tuple[int, ...]:
        """Bases in canonical (lexicographic on element positions) order."""
        return tuple(sorted(self.bases, key=mask_indices))

    def is_basis(self, subset) -> bool:
        return self._as_mask(subset) in self.bases

    def _as_mask(self, subset) -> int:
        return subset if isinstance(subset, int) else self.mask(subset)

    def rank(self, subset) -> int:
        """max |B ∩ S| over bases; ``subset`` is a mask or an iterable of labels."""
        s = self._as_mask(subset)
        r = self._rank_cache.get(s)
        if r is None:
            r = max(popcount(b & s) for b in self.bases)
            self._rank_cache[s] = r
        return r

    def circuit_hyperplanes(self) -> list[frozenset]:
        return [frozenset(self.labels(x)) for x in self.circuit_hyperplane_masks()]

    def circuit_hyperplane_masks(self) -> list[int]:
        d = self.rank_d
        out = []
        for idx in combinations(range(self.n), d):
            x = sum(1 << i for i in idx)
            if x in self.bases or self.rank(x) != d - 1:
                continue
            # circuit: every proper subset independent; enough to check the (d-1)-subsets
            if any(self.rank(x & ~(1 << i)) != d - 1 for i in idx):
                continue
            # hyperplane: closed of rank d-1
            if all(self.rank(x | (1 << y)) == d for y in range(self.n) if not x >> y & 1):
                out.append(x)
        return out

    def relax(self, subset) -> "Matroid":
        x = self._as_mask(subset)
        if x not in self.circuit_hyperplane_masks():
            raise NotCircuitHyperplane(f"{sorted(self.labels(x), key=str)} is not a circuit-hyperplane")
        return Matroid(self.ground, self.bases | {x})

    def connected_components(self) -> list[tuple]:
        """Connected components via the fundamental-circuit graph of one basis."""
        base = self.basis_list[0]
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in range(self.n):
            if base >> e & 1:
                continue
            for f in mask_indices(base):
                if (base & ~(1 << f)) | (1 << e) in self.bases:
                    parent[find(e)] = find(f)
        groups: dict[int, list] = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        return [tuple(self.ground[i] for i in g) for g in sorted(groups.values())]

    def check_exchange(self) -> None:
        for b1 in self.bases:
            for b2 in self.bases:
                diff2 = b2 & ~b1
                for e in mask_indices(b1 & ~b2):
                    stripped = b1 & ~(1 << e)
                    if not any(stripped | (1 << f) in self.bases for f in mask_indices(diff2)):
                        raise ExchangeAxiomViolation(
                            set(self.labels(b1)), set(self.labels(b2)), self.ground[e]
                        )

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank_d}, bases={len(self.bases)})"


def matroid_from_bases(ground: Sequence, bases: Iterable[Iterable]) -> Matroid:
    ground = tuple(ground)
    index = {label: i for i, label in enumerate(ground)}
    masks = set()
    for b in bases:
        try:
            masks.add(sum(1 << index[x] for x in set(b)))
        except KeyError as exc:
            raise MatroidError(f"{exc.args[0]!r} is not in the ground set") from None
    m = Matroid(ground, frozenset(masks))
    m.check_exchange()
    return m


def maximal_minors(matrix: Sequence[Sequence]) -> dict[int, Fraction]:
    """Map every d-subset mask of columns to det A[B] (d = number of rows)."""
    a = to_fraction_matrix(matrix)
    d = len(a)
    n = len(a[0]) if a else 0
    if d > n:
        raise MatroidError("a representing matrix needs at least as many columns as rows")
    out = {}
    for idx in combinations(range(n), d):
        sub = [[row[j] for j in idx] for row in a]
        out[sum(1 << j for j in idx)] = det(sub)
    return out


def matroid_from_matrix(matrix: Sequence[Sequence], ground: Sequence | None = None) -> Matroid:
    minors = maximal_minors(matrix)
    bases = frozenset(b for b, v in minors.items() if v != 0)
    if not bases:
        raise RankDeficient("no maximal minor is nonzero")
    n = len(matrix[0])
    return Matroid(tuple(range(n)) if ground is None else tuple(ground), bases)


def uniform_matroid(k: int, n: int, ground: Sequence | None = None) -> Matroid:
    if not 0 <= k <= n:
        raise MatroidError(f"U({k},{n}) is undefined")
    ground = tuple(range(1, n + 1)) if ground is None else tuple(ground)
    return Matroid(ground, frozenset(sum(1 << i for i in c) for c in combinations(range(n), k)))


def graphic_matroid(edges: Sequence[tuple], labels: Sequence | None = None) -> Matroid:
    """Cycle matroid of a multigraph given as an edge list (parallel edges allowed)."""
    vertices = sorted({v for e in edges for v in e}, key=str)
    vindex = {v: i for i, v in enumerate(vertices)}

    def forest_rank(idx) -> int:
        parent = list(range(len(vertices)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        r = 0
        for j in idx:
            u, v = (find(vindex[x]) for x in edges[j])
            if u != v:
                parent[u] = v
                r += 1
        return r

    d = forest_rank(range(len(edges)))
    bases = frozenset(
        sum(1 << j for j in idx)
        for idx in combinations(range(len(edges)), d)
        if forest_rank(idx) == d
    )
    return Matroid(tuple(range(len(edges))) if labels is None else tuple(labels), bases)


FANO_LINES = ((1, 2, 3), (3, 4, 5), (5, 6, 1), (1, 7, 4), (3, 7, 6), (5, 7, 2), (2, 4, 6))

# Columns labelled 0..7.
P8_MATRIX = (
    (1, 0, 0, 0, 0, 1, 1, 2),
    (0, 1, 0, 0, 1, 0, 1, 1),
    (0, 0, 1, 0, 1, 1, 0, 1),
    (0, 0, 0, 1, 2, 1, 1, 0),
)
P8_RELAXED = (3, 5, 6, 7)

# Columns labelled 1..7.
NONFANO_MATRIX = (
    (1, 1, 0, 0, 0, 1, 1),
    (0, 1, 1, 1, 0, 0, 1),
    (0, 0, 0, 1, 1, 1, 1),
)

F7M4_GROUND = ("0", "1", "2", "3", "0'", "1'", "2'")
F7M4_LINES = (("3", "0", "0'"), ("3", "1", "1'"), ("3", "2", "2'"))
F7M5_GROUND = ("0", "1", "2", "4", "0'", "1'", "2'")
F7M5_LINES = (("4", "0", "0'"), ("4", "2", "2'"))

# Edge i joins the listed vertices; labels 0..7 as drawn.
G1_EDGES = (
    ("L", "B"), ("C", "R"), ("T", "R"), ("B", "R"),
    ("T", "C"), ("T", "L"), ("C", "L"), ("T", "C"),
)
# Unlabelled in the drawing: a 4-cycle T-L-B-R plus doubled edges L-C and R-C.
G2_EDGES = (
    ("T", "L"), ("L", "B"), ("B", "R"), ("R", "T"),
    ("L", "C"), ("L", "C"), ("R", "C"), ("R", "C"),
)


def _from_lines(ground, lines, rank=3) -> Matroid:
    non_bases = {frozenset(line) for line in lines}
    bases = [c for c in combinations(ground, rank) if frozenset(c) not in non_bases]
    return matroid_from_bases(ground, bases)


_UNIFORM = re.compile(r"^u\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$", re.IGNORECASE)


def catalog(name: str) -> Matroid:
    """The named matroids used throughout the package."""
    key = name.strip().lower()
    if key == "fano":
        return _from_lines(tuple(range(1, 8)), FANO_LINES)
    if key == "nonfano":
        return matroid_from_matrix(NONFANO_MATRIX, ground=range(1, 8))
    if key == "f7m4":
        return _from_lines(F7M4_GROUND, F7M4_LINES)
    if key == "f7m5":
        return _from_lines(F7M5_GROUND, F7M5_LINES)
    if key == "p8":
        return matroid_from_matrix(P8_MATRIX)
    if key == "p1":
        return catalog("p8").relax(P8_RELAXED)
    if key == "graphic_g1":
        return graphic_matroid(G1_EDGES)
    if key == "graphic_g2":
        return graphic_matroid(G2_EDGES)
    m = _UNIFORM.match(key)
    if m:
        return uniform_matroid(int(m.group(1)), int(m.group(2)))
    raise UnknownName(f"unknown catalog matroid {name!r}")


CATALOG_NAMES = ("fano", "nonfano", "f7m4", "f7m5", "p8", "p1", "graphic_g1", "graphic_g2")
