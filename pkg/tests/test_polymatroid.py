from __future__ import annotations

from itertools import product

import pytest

from stablematroid import hpp
from stablematroid.matroid import catalog, uniform_matroid
from stablematroid.polymatroid import (
    MConvexSet,
    NotAFlat,
    NotMConvex,
    NotPolymatroid,
    Polymatroid,
    basis_mconvex,
    find_amalgam,
    flats,
    is_amalgam,
    is_mconvex,
    is_modular_pair,
    matroid_rank_polymatroid,
    mconvex_from_rank,
    mconvex_violation,
    rank_from_mconvex,
    restrict,
    scale,
    specialize_support,
    sticky_sufficient,
)


def uniform3() -> MConvexSet:
    return MConvexSet(("1", "2", "3"), frozenset(p for p in product(range(3), repeat=3) if sum(p) == 3))


def rank_u(k, n, ground=None):
    return matroid_rank_polymatroid(uniform_matroid(k, n, ground))


def test_uniform3_has_seven_points():
    assert len(uniform3()) == 7
    assert is_mconvex(uniform3())


def test_u12_points_mconvex():
    assert mconvex_violation([(1, 0), (0, 1)]) is None


def test_missing_midpoint_violation():
    assert mconvex_violation([(2, 0), (0, 2)], ["1", "2"]) == ("1", (2, 0), (0, 2))


def test_rank_from_mconvex_uniform3():
    r = rank_from_mconvex(uniform3())
    assert r(["1"]) == 2
    assert r(["1", "2"]) == 3
    assert r(["1", "2", "3"]) == 3
    assert r([]) == 0


def test_rank_from_non_mconvex_raises():
    with pytest.raises(NotMConvex):
        rank_from_mconvex(MConvexSet(("1", "2"), frozenset({(2, 0), (0, 2)})))


def test_u12_round_trip():
    J = MConvexSet(("1", "2"), frozenset({(1, 0), (0, 1)}))
    assert rank_from_mconvex(J).set_function() == rank_u(1, 2, ("1", "2")).set_function()
    assert mconvex_from_rank(rank_u(1, 2, ("1", "2"))) == J


def test_uniform3_round_trip():
    assert mconvex_from_rank(rank_from_mconvex(uniform3())) == uniform3()


def test_fano_rank_gives_basis_indicators():
    J = mconvex_from_rank(matroid_rank_polymatroid(catalog("fano")))
    assert len(J) == 28
    assert J == basis_mconvex(catalog("fano"))


def test_non_polymatroid_rejected():
    bad = Polymatroid(("a",), (0, -1))
    assert not bad.is_polymatroid()
    with pytest.raises(NotPolymatroid):
        mconvex_from_rank(bad)


def test_uniform3_flats_not_modular():
    r = rank_from_mconvex(uniform3())
    f1, f2 = r.mask(["1"]), r.mask(["2"])
    assert {f1, f2} <= set(flats(r))
    assert not is_modular_pair(r, f1, f2)
    assert not sticky_sufficient(r)


def test_modular_trivial_pairs():
    r = rank_from_mconvex(uniform3())
    f = r.mask(["1"])
    assert is_modular_pair(r, f, f)
    assert is_modular_pair(r, 0, r.full_mask)


def test_non_flat_rejected():
    r = rank_u(1, 2)
    with pytest.raises(NotAFlat):
        is_modular_pair(r, r.mask([1]), r.mask([1]))


def test_ground_is_flat_and_free_matroid_all_flats():
    r = rank_u(3, 3)
    assert sorted(flats(r)) == list(range(8))
    assert sticky_sufficient(r)
    assert sticky_sufficient(rank_u(1, 2))


def test_restrict():
    r = rank_u(2, 4)
    assert restrict(r, r.ground).set_function() == r.set_function()
    assert restrict(r, [1]).to_dict() == {"": 0, "1": 1}


def test_scale():
    r = scale(rank_u(1, 2), 2)
    assert r([1]) == 2 and r([1, 2]) == 2
    assert scale(rank_u(1, 2), 1) == rank_u(1, 2)


def test_specialization_grounds():
    inst = hpp.amalgam_instance()
    assert inst["J1"].ground == ("0", "1", "2", "3")
    assert inst["J2"].ground == ("0", "1", "2", "4")
    # frozen: number of distinct specialized exponent vectors
    assert (len(inst["J1"]), len(inst["J2"])) == (10, 11)
    assert scale(inst["r1"], 3)(["0"]) == 6


def test_identity_specialization_keeps_bases():
    M = catalog("fano")
    assert specialize_support(M, {}) == basis_mconvex(M)


def test_r1_restriction_is_uniform3():
    r1 = hpp.amalgam_instance()["r1"]
    J = MConvexSet(("0", "1", "2"), uniform3().points)
    assert restrict(r1, ("0", "1", "2")).set_function() == rank_from_mconvex(J).set_function()


def test_find_amalgam_self():
    r = rank_u(2, 4)
    assert find_amalgam(r, r) == r


def test_find_amalgam_disjoint_is_direct_sum():
    a, b = rank_u(1, 2, ("a", "b")), rank_u(1, 2, ("c", "d"))
    r = find_amalgam(a, b)
    assert is_amalgam(r, a, b)
    for s, v in r.set_function().items():
        assert v == a(s & {"a", "b"}) + b(s & {"c", "d"})


@pytest.mark.parametrize("m", [1, 2, 3])
def test_no_amalgam_for_scaled_instance(m):
    inst = hpp.amalgam_instance()
    assert find_amalgam(scale(inst["r1"], m), scale(inst["r2"], m)) is None


def test_amalgam_witness_satisfies_axioms():
    # two copies of U(2,3) glued along two elements
    r1 = rank_u(2, 3, ("a", "b", "c"))
    r2 = rank_u(2, 3, ("a", "b", "d"))
    r = find_amalgam(r1, r2)
    assert r is not None and is_amalgam(r, r1, r2)
