"""JSON formats for matroids, matrices, polymatroids, M-convex sets,
polynomials and quaternion matrices.

Rationals are written as strings "p" or "p/q"; labels as strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Sequence

from .matroid import Matroid, matroid_from_bases
from .poly import ParseError, SparsePoly, parse_poly
from .polymatroid import MConvexSet, Polymatroid
from .quaternion import QuatMatrix


class FormatError(ValueError):
    pass


def fmt_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# matroids and matrices ---------------------------------------------------


def matroid_to_json(M: Matroid) -> dict:
    return {
        "ground": [str(x) for x in M.ground],
        "rank": M.rank_d,
        "bases": [[str(x) for x in M.labels(b)] for b in M.basis_list],
    }


def matroid_from_json(data: Mapping) -> Matroid:
    try:
        ground = [str(x) for x in data["ground"]]
        bases = [[str(x) for x in b] for b in data["bases"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad matroid JSON: {exc}") from None
    M = matroid_from_bases(ground, bases)
    if "rank" in data and int(data["rank"]) != M.rank_d:
        raise FormatError("declared rank disagrees with the bases")
    return M


def matrix_to_json(rows: Sequence[Sequence]) -> dict:
    return {
        "rows": len(rows),
        "cols": len(rows[0]) if rows else 0,
        "entries": [[fmt_rational(x) for x in row] for row in rows],
    }


def matrix_from_json(data: Mapping) -> list[list[Fraction]]:
    try:
        rows = [[Fraction(str(x)) for x in row] for row in data["entries"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad matrix JSON: {exc}") from None
    if len(rows) != int(data.get("rows", len(rows))):
        raise FormatError("declared row count disagrees with the entries")
    if any(len(r) != int(data.get("cols", len(r))) for r in rows):
        raise FormatError("declared column count disagrees with the entries")
    return rows


# polymatroids and M-convex sets --------------------------------------------


def polymatroid_to_json(r: Polymatroid) -> dict:
    return {"ground": [str(x) for x in r.ground], "r": r.to_dict()}


def polymatroid_from_json(data: Mapping) -> Polymatroid:
    ground = tuple(str(x) for x in data["ground"])
    index = {g: i for i, g in enumerate(ground)}
    table = [None] * (1 << len(ground))
    for key, value in data["r"].items():
        labels = [s for s in key.split(",") if s != ""]
        try:
            mask = sum(1 << index[s] for s in labels)
        except KeyError as exc:
            raise FormatError(f"unknown label {exc.args[0]!r}") from None
        table[mask] = int(value)
    if any(v is None for v in table):
        raise FormatError("polymatroid table must list every subset")
    return Polymatroid(ground, tuple(table))


def mconvex_to_json(J: MConvexSet) -> dict:
    return {"ground": [str(x) for x in J.ground], "points": [list(p) for p in J.sorted_points()]}


def mconvex_from_json(data: Mapping) -> MConvexSet:
    return MConvexSet(tuple(str(x) for x in data["ground"]), frozenset(tuple(p) for p in data["points"]))


# polynomials ---------------------------------------------------------------


def polynomial_from_text_or_json(text: str) -> SparsePoly:
    """Accept either the JSON mirror or the canonical text form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return SparsePoly.from_json(json.loads(stripped))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from None
    return parse_poly(stripped)


def read_polynomial(path: str | Path) -> SparsePoly:
    return polynomial_from_text_or_json(Path(path).read_text())


# quaternion matrices -------------------------------------------------------


def quat_matrix_to_json(A: QuatMatrix) -> dict:
    return A.to_json()


def quat_matrix_from_json(data: Mapping) -> QuatMatrix:
    try:
        return QuatMatrix.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad quaternion matrix JSON: {exc}") from None
