from __future__ import annotations

import random

from hypothesis import given
from hypothesis import strategies as st

from stablematroid import hpp
from stablematroid.matroid import RankDeficient, matroid_from_matrix
from stablematroid.poly import SparsePoly
from stablematroid.polymatroid import (
    find_amalgam,
    is_amalgam,
    is_nondegenerate,
    mconvex_from_rank,
    mconvex_violation,
    random_mconvex,
    rank_from_mconvex,
    restrict,
    zero_slice,
)

seeds = st.integers(min_value=0, max_value=2**32)


@given(seeds)
def test_random_mconvex_round_trip(seed):
    J = random_mconvex(random.Random(seed), 5)
    assert mconvex_violation(J.points, J.ground) is None
    r = rank_from_mconvex(J)
    assert r.is_polymatroid()
    assert mconvex_from_rank(r) == J
    assert rank_from_mconvex(mconvex_from_rank(r)) == r


@given(seeds, st.data())
def test_restriction_equals_zero_slice(seed, data):
    J = random_mconvex(random.Random(seed), 5)
    T = data.draw(st.sets(st.sampled_from(J.ground)))
    if not is_nondegenerate(J, T):
        return
    assert restrict(rank_from_mconvex(J), T).set_function() == rank_from_mconvex(zero_slice(J, T)).set_function()


@given(seeds, st.data())
def test_amalgam_found_when_one_exists(seed, data):
    # restrictions of one polymatroid always have that polymatroid as an amalgam
    J = random_mconvex(random.Random(seed), 4)
    r = rank_from_mconvex(J)
    g = list(J.ground)
    a = data.draw(st.sets(st.sampled_from(g), min_size=1))
    b = data.draw(st.sets(st.sampled_from(g), min_size=1))
    if a | b != set(g):
        b = b | (set(g) - a)
    r1, r2 = restrict(r, [x for x in g if x in a]), restrict(r, [x for x in g if x in b])
    found = find_amalgam(r1, r2)
    assert found is not None and is_amalgam(found, r1, r2)


matrices = st.integers(min_value=2, max_value=3).flatmap(
    lambda d: st.lists(st.lists(st.integers(min_value=-2, max_value=3), min_size=6, max_size=6), min_size=d, max_size=d)
)


@given(matrices)
def test_log_determinants_satisfy_quadrangle_equations(A):
    try:
        M = matroid_from_matrix(A)
    except RankDeficient:
        return
    if M.rank_d != len(A):
        return
    V = hpp.v_space(M)
    assert hpp.in_v_space(M, hpp.u_vector(A, M), V)
    assert V.contains_space(hpp.w_space(M))


@given(matrices)
def test_relaxation_quadrangles_are_inherited(A):
    try:
        M = matroid_from_matrix(A)
    except RankDeficient:
        return
    for x in M.circuit_hyperplane_masks():
        assert hpp.quadrangle_keys(M.relax(x)) <= hpp.quadrangle_keys(M)


polys = st.dictionaries(
    st.tuples(*(st.integers(min_value=0, max_value=2),) * 3),
    st.integers(min_value=-3, max_value=3),
    max_size=5,
).map(lambda t: SparsePoly(("x", "y", "z"), t))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == SparsePoly(("x", "y", "z"))


@given(polys, st.tuples(*(st.integers(min_value=-3, max_value=3),) * 3), st.tuples(*(st.integers(min_value=-3, max_value=3),) * 3))
def test_evaluation_is_homomorphism(a, point, other):
    b = SparsePoly(("x", "y", "z"), {(1, 0, 0): other[0], (0, 0, 1): other[2]})
    pt = dict(zip(("x", "y", "z"), point))
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
