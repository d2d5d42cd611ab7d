"""Exact checks for stable polynomials, their supports and quaternionic determinants."""

from .matroid import Matroid, catalog, matroid_from_bases, matroid_from_matrix
from .poly import SparsePoly, parse_poly, stability_falsify
from .polymatroid import MConvexSet, Polymatroid, find_amalgam, mconvex_from_rank, rank_from_mconvex

__all__ = [
    "MConvexSet",
    "Matroid",
    "Polymatroid",
    "SparsePoly",
    "catalog",
    "find_amalgam",
    "matroid_from_bases",
    "matroid_from_matrix",
    "mconvex_from_rank",
    "parse_poly",
    "rank_from_mconvex",
    "stability_falsify",
]
