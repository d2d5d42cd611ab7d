"""M-convex sets, polymatroids and amalgam search.

A polymatroid on ``ground`` is a full table ``r[mask]`` over all subsets,
with bit ``i`` of a mask standing for ``ground[i]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Hashable, Iterable, Mapping, Sequence

from .matroid import Matroid, RankDeficient, mask_indices, matroid_from_matrix, popcount


class NotMConvex(ValueError):
    pass


class NotPolymatroid(ValueError):
    pass


class NotAFlat(ValueError):
    pass


class RestrictionMismatch(ValueError):
    pass


def _mask_of(ground: Sequence, subset: Iterable) -> int:
    index = {label: i for i, label in enumerate(ground)}
    out = 0
    for label in subset:
        if label not in index:
            raise KeyError(f"{label!r} is not in the ground set {ground!r}")
        out |= 1 << index[label]
    return out


@dataclass(frozen=True)
class MConvexSet:
    ground: tuple
    points: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        pts = frozenset(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if any(len(p) != len(self.ground) for p in pts):
            raise ValueError("point length does not match the ground set")
        if any(c < 0 for p in pts for c in p):
            raise ValueError("M-convex points must be nonnegative")

    def sorted_points(self) -> list[tuple]:
        return sorted(self.points, reverse=True)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class Polymatroid:
    ground: tuple
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != 1 << len(self.ground):
            raise ValueError("rank table must have one entry per subset")

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask(self, subset: Iterable[Hashable]) -> int:
        return _mask_of(self.ground, subset)

    def __call__(self, subset) -> int:
        return self.table[subset if isinstance(subset, int) else self.mask(subset)]

    def labels(self, mask: int) -> tuple:
        return tuple(self.ground[i] for i in mask_indices(mask))

    def axiom_violation(self):
        """None if r is a polymatroid, else a short description of a failure.

        Local conditions suffice: r(S) <= r(S+e) and
        r(S+e+f) + r(S) <= r(S+e) + r(S+f).
        """
        r = self.table
        if r[0] != 0:
            return ("normalized", 0)
        for s in range(1 << self.n):
            if r[s] < 0:
                return ("nonnegative", s)
            for e in range(self.n):
                if s >> e & 1:
                    continue
                se = s | 1 << e
                if r[se] < r[s]:
                    return ("monotone", s, e)
                for f in range(e + 1, self.n):
                    if s >> f & 1:
                        continue
                    sf = s | 1 << f
                    if r[se | sf] + r[s] > r[se] + r[sf]:
                        return ("submodular", s, e, f)
        return None

    def is_polymatroid(self) -> bool:
        return self.axiom_violation() is None

    def is_matroid_rank(self) -> bool:
        return self.is_polymatroid() and all(self.table[1 << i] <= 1 for i in range(self.n))

    def to_dict(self) -> dict[str, int]:
        return {",".join(str(x) for x in self.labels(s)): self.table[s] for s in range(1 << self.n)}

    def set_function(self) -> dict[frozenset, int]:
        """Label-set keyed view, independent of ground order."""
        return {frozenset(self.labels(s)): self.table[s] for s in range(1 << self.n)}


def mconvex_violation(points: Iterable[Sequence[int]], ground: Sequence | None = None):
    """Return ``None`` if the set is M-convex, else a witness ``(i, alpha, beta)``.

    ``i`` is the ground label (position when ``ground`` is omitted) at which the
    exchange from ``alpha`` towards ``beta`` has no admissible partner ``j``.
    """
    pts = [tuple(p) for p in points]
    pset = set(pts)
    n = len(pts[0]) if pts else 0
    for alpha in sorted(pts, reverse=True):
        for beta in sorted(pts):
            for i in range(n):
                if alpha[i] <= beta[i]:
                    continue
                ok = False
                for j in range(n):
                    if alpha[j] < beta[j]:
                        cand = list(alpha)
                        cand[i] -= 1
                        cand[j] += 1
                        if tuple(cand) in pset:
                            ok = True
                            break
                if not ok:
                    label = ground[i] if ground is not None else i
                    return (label, alpha, beta)
    return None


def is_mconvex(J) -> bool:
    if isinstance(J, MConvexSet):
        return mconvex_violation(J.points, J.ground) is None
    return mconvex_violation(J) is None


def rank_from_mconvex(J: MConvexSet, check: bool = True) -> Polymatroid:
    """r_J(S) = max over points of the coordinate sum on S."""
    if check:
        bad = mconvex_violation(J.points, J.ground)
        if bad is not None:
            raise NotMConvex(f"not M-convex, witness {bad}")
    n = len(J.ground)
    table = []
    for s in range(1 << n):
        idx = mask_indices(s)
        table.append(max(sum(p[i] for i in idx) for p in J.points))
    return Polymatroid(J.ground, tuple(table))


def mconvex_from_rank(r: Polymatroid, check: bool = True) -> MConvexSet:
    """All x in N^E with x(S) <= r(S) for every S and x(E) = r(E)."""
    if check:
        bad = r.axiom_violation()
        if bad is not None:
            raise NotPolymatroid(f"not a polymatroid: {bad}")
    n = r.n
    total = r.table[r.full_mask]
    out = []
    x = [0] * n

    def feasible_prefix(k: int) -> bool:
        # every subset of the first k coordinates that contains k-1
        top = 1 << (k - 1)
        for s in range(top, 1 << k):
            if sum(x[i] for i in mask_indices(s)) > r.table[s]:
                return False
        return True

    def rec(k: int, remaining: int):
        if k == n:
            if remaining == 0 and all(
                sum(x[i] for i in mask_indices(s)) <= r.table[s] for s in range(1 << n)
            ):
                out.append(tuple(x))
            return
        hi = min(r.table[1 << k], remaining)
        for v in range(hi, -1, -1):
            x[k] = v
            if feasible_prefix(k + 1):
                rec(k + 1, remaining - v)
        x[k] = 0

    rec(0, total)
    return MConvexSet(r.ground, frozenset(out))


def flats(r: Polymatroid) -> list[int]:
    """Masks F with r(F') > r(F) for every proper superset F'."""
    out = []
    for f in range(1 << r.n):
        if all(r.table[f | 1 << e] > r.table[f] for e in range(r.n) if not f >> e & 1):
            out.append(f)
    return out


def is_modular_pair(r: Polymatroid, f1, f2) -> bool:
    a = f1 if isinstance(f1, int) else r.mask(f1)
    b = f2 if isinstance(f2, int) else r.mask(f2)
    fl = set(flats(r))
    for x in (a, b):
        if x not in fl:
            raise NotAFlat(f"{r.labels(x)} is not a flat")
    t = r.table
    return t[a] + t[b] == t[a | b] + t[a & b]


def non_modular_flat_pairs(r: Polymatroid) -> list[tuple[int, int]]:
    fl = flats(r)
    t = r.table
    return [(a, b) for a, b in combinations(fl, 2) if t[a] + t[b] != t[a | b] + t[a & b]]


def sticky_sufficient(r: Polymatroid) -> bool:
    """True iff every pair of flats is modular (which implies stickiness)."""
    return not non_modular_flat_pairs(r)


def restrict(r: Polymatroid, subset: Iterable) -> Polymatroid:
    """Restriction to ``subset``, keeping the original ground order."""
    keep = set(subset)
    unknown = keep - set(r.ground)
    if unknown:
        raise KeyError(f"{sorted(unknown, key=str)} not in the ground set")
    positions = [i for i, label in enumerate(r.ground) if label in keep]
    table = []
    for s in range(1 << len(positions)):
        table.append(r.table[sum(1 << positions[k] for k in mask_indices(s))])
    return Polymatroid(tuple(r.ground[i] for i in positions), tuple(table))


def scale(r: Polymatroid, m: int) -> Polymatroid:
    if m < 1:
        raise ValueError("scale factor must be a positive integer")
    return Polymatroid(r.ground, tuple(m * v for v in r.table))


def matroid_rank_polymatroid(M: Matroid) -> Polymatroid:
    return Polymatroid(M.ground, tuple(M.rank(s) for s in range(1 << M.n)))


def basis_mconvex(M: Matroid) -> MConvexSet:
    pts = frozenset(tuple((b >> i) & 1 for i in range(M.n)) for b in M.bases)
    return MConvexSet(M.ground, pts)


def specialize_support(M: Matroid, identify: Mapping) -> MConvexSet:
    """Support of the basis generating polynomial after identifying variables.

    ``identify`` maps old labels to new labels; labels missing from it map to
    themselves.  New labels are ordered by first appearance along ``M.ground``.
    """
    images = [identify.get(label, label) for label in M.ground]
    new_ground: list = []
    for lab in images:
        if lab not in new_ground:
            new_ground.append(lab)
    pos = [new_ground.index(lab) for lab in images]
    pts = set()
    for b in M.bases:
        v = [0] * len(new_ground)
        for i in mask_indices(b):
            v[pos[i]] += 1
        pts.add(tuple(v))
    return MConvexSet(tuple(new_ground), frozenset(pts))


def zero_slice(J: MConvexSet, subset: Iterable) -> MConvexSet:
    """Points vanishing outside ``subset``, projected onto it (the J' of restriction)."""
    keep = set(subset)
    positions = [i for i, label in enumerate(J.ground) if label in keep]
    outside = [i for i in range(len(J.ground)) if i not in positions]
    pts = frozenset(tuple(p[i] for i in positions) for p in J.points if all(p[i] == 0 for i in outside))
    return MConvexSet(tuple(J.ground[i] for i in positions), pts)


def is_nondegenerate(J: MConvexSet, subset: Iterable) -> bool:
    return len(zero_slice(J, subset)) > 0


def _union_ground(g1: Sequence, g2: Sequence) -> tuple:
    return tuple(g1) + tuple(x for x in g2 if x not in set(g1))


def find_amalgam(r1: Polymatroid, r2: Polymatroid, *, stats: dict | None = None) -> Polymatroid | None:
    """Search for a polymatroid on E1 ∪ E2 restricting to r1 and r2.

    Returns a witness amalgam, or ``None`` once the search space is exhausted
    (a certificate that no amalgam exists).  Values on subsets inside E1 or E2
    are forced; every other subset S is filled in order of increasing size
    (ties broken lexicographically) with candidates from

        max_e r(S - e)  ..  min( r(S∩E1) + r(S∩E2) - r(S∩E0),
                                 min_{e,f} r(S-e) + r(S-f) - r(S-e-f) )

    largest first, so disjoint grounds yield the direct sum.  The upper cap is implied by submodularity applied to
    S∩E1 and S∩E2, so no amalgam is excluded by it.
    """
    e0 = set(r1.ground) & set(r2.ground)
    if restrict(r1, e0).set_function() != restrict(r2, e0).set_function():
        raise RestrictionMismatch("r1 and r2 disagree on the common ground set")
    ground = _union_ground(r1.ground, r2.ground)
    n = len(ground)
    m1 = _mask_of(ground, r1.ground)
    m2 = _mask_of(ground, r2.ground)
    m0 = m1 & m2
    pos1 = [ground.index(x) for x in r1.ground]
    pos2 = [ground.index(x) for x in r2.ground]

    def local(s: int, pos: list[int]) -> int:
        return sum(1 << k for k, p in enumerate(pos) if s >> p & 1)

    table: list[int | None] = [None] * (1 << n)
    free: list[int] = []
    for s in range(1 << n):
        if s & ~m1 == 0:
            table[s] = r1.table[local(s, pos1)]
        elif s & ~m2 == 0:
            table[s] = r2.table[local(s, pos2)]
        else:
            free.append(s)
    free.sort(key=lambda s: (popcount(s), mask_indices(s)))
    nodes = 0

    def bounds(s: int) -> tuple[int, int]:
        idx = mask_indices(s)
        lo = max(table[s & ~(1 << e)] for e in idx)
        hi = table[s & m1] + table[s & m2] - table[s & m0]
        for a, b in combinations(idx, 2):
            sa, sb = s & ~(1 << a), s & ~(1 << b)
            hi = min(hi, table[sa] + table[sb] - table[sa & sb])
        return lo, hi

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == len(free):
            return True
        s = free[k]
        lo, hi = bounds(s)
        for v in range(hi, lo - 1, -1):
            nodes += 1
            table[s] = v
            if rec(k + 1):
                return True
        table[s] = None
        return False

    found = rec(0)
    if stats is not None:
        stats.update(nodes=nodes, free_subsets=len(free))
    if not found:
        return None
    return Polymatroid(ground, tuple(table))


def is_amalgam(r: Polymatroid, r1: Polymatroid, r2: Polymatroid) -> bool:
    return (
        r.is_polymatroid()
        and restrict(r, r1.ground).set_function() == r1.set_function()
        and restrict(r, r2.ground).set_function() == r2.set_function()
    )


def random_mconvex(rng: random.Random, max_ground: int = 5) -> MConvexSet:
    """A random M-convex set on at most ``max_ground`` elements.

    Either the image of the bases of a random representable matroid under a
    random identification of its elements, or a box slice
    {x : |x| = d, lo <= x <= hi}.  Both constructions preserve M-convexity.
    """
    n = rng.randint(1, max_ground)
    ground = tuple(str(i) for i in range(n))
    if rng.random() < 0.7:
        cols = rng.randint(n, min(n + 3, 8))
        rows = rng.randint(1, min(3, cols))
        while True:
            A = [[rng.choice((-1, 0, 0, 1, 2)) for _ in range(cols)] for _ in range(rows)]
            try:
                M = matroid_from_matrix(A)
            except RankDeficient:
                continue
            if M.rank_d == rows:
                break
        owner = list(range(n)) + [rng.randrange(n) for _ in range(cols - n)]
        rng.shuffle(owner)
        pts = set()
        for b in M.bases:
            v = [0] * n
            for i in mask_indices(b):
                v[owner[i]] += 1
            pts.add(tuple(v))
        return MConvexSet(ground, frozenset(pts))
    lo = [rng.randint(0, 1) for _ in range(n)]
    hi = [a + rng.randint(0, 2) for a in lo]
    d = rng.randint(sum(lo), sum(hi))
    pts = frozenset(p for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))) if sum(p) == d)
    return MConvexSet(ground, pts)
