"""Exact quaternion matrices, the complex embedding phi and the determinant
functional delta.

delta(A) = sqrt(|det phi(A)|).  Everything is kept as delta squared, which is
rational; delta itself is returned exactly when it is a rational square and
as a sympy radical otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Iterable, Mapping, Sequence

import sympy

from . import linalg
from .matroid import Matroid
from .poly import SparsePoly, basis_generating_polynomial


class PropertyViolation(ValueError):
    pass


class IdentityMismatch(AssertionError):
    def __init__(self, message: str, difference=None):
        super().__init__(message)
        self.difference = difference


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class GaussianRational:
    """re + im*i with rational parts; an exact field element for :mod:`linalg`."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _q(self.re))
        object.__setattr__(self, "im", _q(self.im))

    @staticmethod
    def _lift(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(_q(x))

    def __add__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


@dataclass(frozen=True)
class Quaternion:
    """a + b i + c j + d k with rational components."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, (tuple, list)):
            return cls(*x)
        return cls(_q(x))

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        o = Quaternion.coerce(other)
        return Quaternion(*(x + y for x, y in zip(self.components, o.components)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-Quaternion.coerce(other))

    def __mul__(self, other):
        o = Quaternion.coerce(other)
        a1, b1, c1, d1 = self.components
        a2, b2, c2, d2 = o.components
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        return Quaternion.coerce(other) * self

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> Fraction:
        return sum((x * x for x in self.components), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.components)

    def __repr__(self):
        return f"Quaternion({', '.join(str(x) for x in self.components)})"


ONE, I, J, K = Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)


@dataclass(frozen=True)
class QuatMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Quaternion.coerce(x) for x in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged quaternion matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        return cls(tuple(tuple(ONE if i == j else Quaternion(0) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def star(self) -> "QuatMatrix":
        return QuatMatrix(tuple(tuple(self.entries[i][j].conjugate() for i in range(self.rows)) for j in range(self.cols)))

    def columns(self, idx: Iterable[int]) -> "QuatMatrix":
        idx = list(idx)
        return QuatMatrix(tuple(tuple(row[j] for j in idx) for row in self.entries))

    def scale_column(self, j: int, lam) -> "QuatMatrix":
        return QuatMatrix(tuple(tuple(x * lam if c == j else x for c, x in enumerate(row)) for row in self.entries))

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = Quaternion(0)
                for k, x in enumerate(row):
                    acc = acc + x * other.entries[k][j]
                new.append(acc)
            out.append(tuple(new))
        return QuatMatrix(tuple(out))

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[[_fmt(c) for c in q.components] for q in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QuatMatrix":
        entries = tuple(tuple(Quaternion(*(Fraction(c) for c in q)) for q in row) for row in data["entries"])
        m = cls(entries)
        if m.rows != int(data["rows"]) or m.cols != int(data["cols"]):
            raise ValueError("declared shape does not match the entries")
        return m


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def quat_matrix(rows: Sequence[Sequence]) -> QuatMatrix:
    """Build from nested lists of rationals, 4-tuples or Quaternions."""
    return QuatMatrix(tuple(tuple(rows_i) for rows_i in rows))


def phi_entry(q: Quaternion) -> list[list[GaussianRational]]:
    a, b, c, d = q.components
    return [
        [GaussianRational(a, b), GaussianRational(c, d)],
        [GaussianRational(-c, d), GaussianRational(a, -b)],
    ]


def phi(A: QuatMatrix) -> list[list[GaussianRational]]:
    out = [[None] * (2 * A.cols) for _ in range(2 * A.rows)]
    for i, row in enumerate(A.entries):
        for j, q in enumerate(row):
            block = phi_entry(q)
            for r in range(2):
                for s in range(2):
                    out[2 * i + r][2 * j + s] = block[r][s]
    return out


def complex_star(C: Sequence[Sequence[GaussianRational]]) -> list[list[GaussianRational]]:
    return [[C[i][j].conjugate() for i in range(len(C))] for j in range(len(C[0]))]


def delta_sq(A: QuatMatrix) -> Fraction:
    """|det phi(A)| as an exact rational."""
    if not A.is_square:
        raise ValueError("delta is defined for square matrices")
    if A.rows == 0:
        return Fraction(1)
    d = linalg.det(phi(A))
    if d.im != 0:
        raise ArithmeticError("det phi(A) is not real")
    return abs(d.re)


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = _q(x)
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def delta(A: QuatMatrix):
    """delta(A) as a Fraction when rational, else a sympy radical."""
    sq = delta_sq(A)
    root = rational_sqrt(sq)
    if root is not None:
        return root
    return sympy.sqrt(sympy.Rational(sq.numerator, sq.denominator))


def delta_multiplicativity_check(A: QuatMatrix, B: QuatMatrix) -> bool:
    if not (A.is_square and B.is_square and A.rows == B.rows):
        raise ValueError("A and B must be square of equal size")
    da, db = delta_sq(A), delta_sq(B)
    return delta_sq(A @ B) == da * db and da == delta_sq(A.star()) and db == delta_sq(B.star())


@dataclass
class CauchyBinetReport:
    holds: bool
    lhs: Fraction
    terms: dict
    lhs_squared: Fraction

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "lhs": _fmt(self.lhs) if self.lhs is not None else None,
            "terms": {",".join(str(i) for i in k): _fmt(v) for k, v in sorted(self.terms.items())},
        }


def cauchy_binet_check(A: QuatMatrix) -> CauchyBinetReport:
    """delta(AA*) against the sum of delta(A[B]A[B]*) over m-subsets B of columns.

    Each delta(A[B]A[B]*) equals delta(A[B])^2 and is rational; the left side
    is recovered exactly from its square.
    """
    m, n = A.rows, A.cols
    if m > n:
        raise ValueError("need m <= n")
    lhs_sq = delta_sq(A @ A.star())
    terms = {}
    consistent = True
    for B in combinations(range(n), m):
        C = A.columns(B)
        t_sq = delta_sq(C @ C.star())
        t = rational_sqrt(t_sq)
        if t is None or t != delta_sq(C):
            consistent = False
            t = delta_sq(C)
        terms[B] = t
    total = sum(terms.values(), Fraction(0))
    lhs = rational_sqrt(lhs_sq)
    holds = consistent and lhs is not None and lhs == total
    return CauchyBinetReport(holds, lhs, terms, lhs_sq)


def delta_matroid(A: QuatMatrix, ground: Sequence | None = None) -> Matroid:
    """Matroid whose bases are the column sets B with delta(A[B]) != 0."""
    d, m = A.rows, A.cols
    bases = frozenset(sum(1 << j for j in B) for B in combinations(range(m), d) if delta_sq(A.columns(B)) != 0)
    if not bases:
        raise PropertyViolation("every maximal minor has delta zero")
    return Matroid(tuple(range(1, m + 1)) if ground is None else tuple(ground), bases)


def delta_basis_property(A: QuatMatrix, M: Matroid) -> bool:
    if A.rows != M.rank_d or A.cols != M.n:
        raise ValueError("A must be rank(M) x |E|")
    for B in combinations(range(M.n), M.rank_d):
        mask = sum(1 << j for j in B)
        if delta_sq(A.columns(B)) != (1 if mask in M.bases else 0):
            return False
    return True


@dataclass
class QUIdentityReport:
    holds: bool
    matroid: Matroid
    h_squared: SparsePoly
    rhs: SparsePoly


def qu_det_polynomial(A: QuatMatrix, prefix: str = "x", labels: Sequence | None = None) -> SparsePoly:
    """det(phi(A) diag(x1,x1,...,xm,xm) phi(A)*) by complex Cauchy-Binet."""
    d, m = A.rows, A.cols
    labels = tuple(range(1, m + 1)) if labels is None else tuple(labels)
    vars = tuple(f"{prefix}{label}" for label in labels)
    C = phi(A)
    terms: dict[tuple, Fraction] = {}
    for S in combinations(range(2 * m), 2 * d):
        minor = linalg.det([[row[s] for s in S] for row in C])
        w = minor.abs2()
        if not w:
            continue
        exp = [0] * m
        for s in S:
            exp[s // 2] += 1
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + w
    return SparsePoly(vars, terms)


def qu_hpp_identity(A: QuatMatrix, M: Matroid | None = None, prefix: str = "x") -> QUIdentityReport:
    """Check h_M^2 == det(phi(A) X phi(A)*) as polynomials.

    Raises PropertyViolation unless delta(A[B]) is 1 on bases and 0 elsewhere,
    and IdentityMismatch (with the difference) if the identity fails.
    """
    M = delta_matroid(A) if M is None else M
    if not delta_basis_property(A, M):
        raise PropertyViolation("delta(A[B]) is not the basis indicator of M")
    h = basis_generating_polynomial(M, prefix)
    h2 = h * h
    rhs = qu_det_polynomial(A, prefix, M.ground)
    diff = h2 - rhs
    if not diff.is_zero():
        raise IdentityMismatch("h_M^2 differs from the Cauchy-Binet expansion", diff)
    return QUIdentityReport(True, M, h2, rhs)


def random_quaternion(rng: random.Random, lo: int = -3, hi: int = 3) -> Quaternion:
    return Quaternion(*(rng.randint(lo, hi) for _ in range(4)))


def random_quat_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> QuatMatrix:
    return QuatMatrix(tuple(tuple(random_quaternion(rng, lo, hi) for _ in range(cols)) for _ in range(rows)))
