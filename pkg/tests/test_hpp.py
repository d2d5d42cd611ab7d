from __future__ import annotations

import random
from fractions import Fraction

import pytest

from stablematroid import hpp
from stablematroid.matroid import CATALOG_NAMES, NONFANO_MATRIX, P8_MATRIX, catalog, uniform_matroid
from stablematroid.poly import SparsePoly, parse_poly, substitute, dehomogenize
from stablematroid.polymatroid import RestrictionMismatch

# frozen: exhaustive enumeration (one relation per unordered pair of opposite corners)
QUADRANGLE_COUNTS = {"p8": 324, "p1": 295, "fano": 105, "nonfano": 93}


@pytest.mark.parametrize("name, count", sorted(QUADRANGLE_COUNTS.items()))
def test_quadrangle_counts(name, count):
    assert len(hpp.degenerate_quadrangles(catalog(name))) == count


def test_uniform_has_no_degenerate_quadrangles():
    assert hpp.degenerate_quadrangles(uniform_matroid(2, 4)) == []


def test_quadrangle_shape():
    M = catalog("fano")
    for q in hpp.degenerate_quadrangles(M):
        i, j, k, l = (1 << x for x in q.ijkl)
        s = q.s
        assert (q.b1, q.b2, q.b3, q.b4) == (s | i | k, s | j | l, s | i | l, s | j | k)
        assert not ((s | i | j) in M.bases and (s | k | l) in M.bases)


@pytest.mark.parametrize(
    "name, dim_v, dim_w",
    [("p8", 9, 8), ("p1", 10, 8), ("fano", 7, 7), ("nonfano", 8, 7), ("graphic_g1", 8, 8)],
)
def test_space_dimensions(name, dim_v, dim_w):
    M = catalog(name)
    V, W = hpp.v_space(M), hpp.w_space(M)
    assert (V.dim, W.dim) == (dim_v, dim_w)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_w_inside_v_and_dimension(name):
    M = catalog(name)
    W = hpp.w_space(M)
    assert W.dim == hpp.expected_w_dim(M)
    assert hpp.v_space(M).contains_space(W)


def test_u_vector_nonfano_is_log2_delta():
    M = catalog("nonfano")
    u = hpp.u_vector(NONFANO_MATRIX, M)
    assert u.primes() == [2]
    x = M.mask((2, 4, 6))
    assert u.coordinate(2) == [Fraction(int(b == x)) for b in M.basis_list]
    assert hpp.in_v_space(M, u) and not hpp.in_w_space(M, u)


def test_u_vector_p8_entries():
    M = catalog("p8")
    u = hpp.u_vector(P8_MATRIX, M)
    assert u.primes() == [2]
    assert set(u.coordinate(2)) == {0, 1, 2}
    assert hpp.in_v_space(M, u) and not hpp.in_w_space(M, u)


def test_u_vector_totally_unimodular_is_zero():
    M = uniform_matroid(2, 3, ground=(0, 1, 2))
    u = hpp.u_vector([[1, 0, 1], [0, 1, 1]], M)
    assert u.is_zero() and hpp.in_w_space(M, u)


def test_u_vector_wrong_matroid():
    with pytest.raises(hpp.NonRepresentingMatrix):
        hpp.u_vector(NONFANO_MATRIX, catalog("fano"))


def test_prime_exponents():
    assert hpp.prime_exponents(Fraction(12, 5)) == {2: 2, 3: 1, 5: -1}
    with pytest.raises(ValueError):
        hpp.prime_exponents(Fraction(0))


def test_log_vector_json():
    M = catalog("nonfano")
    entries = [e for e in hpp.u_vector(NONFANO_MATRIX, M).to_json(M) if e["log"]]
    assert entries == [{"basis": ["2", "4", "6"], "log": {"2": "1"}}]


def test_scaling_identity_and_single_element():
    M = catalog("fano")
    coeffs = {b: Fraction(1) for b in M.bases}
    assert hpp.scaling_action(coeffs, {}) == coeffs
    scaled = hpp.scaling_action(coeffs, {0: Fraction(2)})
    assert [scaled[b] for b in M.basis_list] == [Fraction(2) if b & 1 else Fraction(1) for b in M.basis_list]


def test_random_scaling_shift_lies_in_w():
    M = catalog("fano")
    rng = random.Random(7)
    W = hpp.w_space(M)
    coeffs = {b: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for b in M.bases}
    s = {i: Fraction(rng.randint(1, 12), rng.randint(1, 12)) for i in range(M.n)}
    shift = hpp.log_vector_of(M, hpp.scaling_action(coeffs, s)) - hpp.log_vector_of(M, coeffs)
    assert hpp.in_w_space(M, shift, W)


def test_iota_embed_zero_and_not_relaxation():
    p8, p1 = catalog("p8"), catalog("p1")
    assert hpp.iota_embed(p8, p1, [0] * 60) == [0] * 61
    with pytest.raises(hpp.NotARelaxation):
        hpp.iota_embed(p8, catalog("fano"), [0] * 60)


def test_embedding_p8_to_p1():
    p8, p1 = catalog("p8"), catalog("p1")
    u = hpp.u_vector(P8_MATRIX, p8)
    rep = hpp.embedding_report(p8, p1, complement=[u.coordinate(2)])
    assert rep["relaxed_set"] == ["3", "5", "6", "7"]
    assert rep["dim_W_relaxed"] + rep["complement_dim"] == rep["dim_V_relaxed"] == 10
    assert rep["iota_maps_V_into_V_relaxed"] and rep["delta_X_in_V_relaxed"]
    assert rep["trivial_intersection_with_W_relaxed"] and rep["spans_complement"]


def test_embedding_fano_to_nonfano():
    rep = hpp.embedding_report(catalog("fano"), catalog("nonfano"))
    assert rep["complement_dim"] == 1 and rep["spans_complement"]


def test_f_ab_structure():
    F = hpp.build_F_ab()
    assert len(F.terms) == 61
    assert F.coefficient({"x0": 1, "x1": 1, "x2": 1, "x3": 1}) == 1
    extra = {(k, v) for k, v in F.terms.items() if k[8] == 1}
    assert extra == {((0, 0, 0, 1, 0, 1, 1, 1, 1, 0), 1)}
    assert F.degree_in("b") == 2
    assert all(F.degree_in(f"x{i}") == 1 for i in range(8))


def test_rayleigh_cubic_identity():
    coeffs = hpp.verify_rayleigh_cubic()
    assert coeffs[3] == parse_poly("-a*b")
    assert coeffs[2] == parse_poly("-a*b - 4*b^2 + 2*a + 12*b + 16")
    assert coeffs[1] == parse_poly("a")
    assert coeffs.get(0, SparsePoly()).is_zero()


def test_rayleigh_cubic_at_one():
    cubic = hpp.rayleigh_cubic_at(1, 1)
    assert cubic.coeffs == (0, 1, 25, -1)
    assert cubic(26) == -650 and cubic(25) > 0


def test_rayleigh_cubic_mismatch_detected():
    F = hpp.build_F_ab() + parse_poly("x0*x1*x4*x7")
    with pytest.raises(hpp.IdentityMismatch):
        hpp.verify_rayleigh_cubic(F)


def test_pipeline_instance_restrictions():
    inst = hpp.amalgam_instance()
    out = hpp.amalgamation_pipeline(inst["P1"], inst["P2"], ("x0", "x1", "x2"))
    assert inst["P1"].keep_only(("x0", "x1", "x2")) == inst["P2"].keep_only(("x0", "x1", "x2"))
    pts = out["P0"].support()
    assert len(pts) == 7 and all(sum(p) == 3 and max(p) <= 2 for p in pts)


def test_pipeline_degenerate_case():
    p = parse_poly("x0*x1 + x0*x2 + x1*x2")
    q1 = hpp.amalgamation_pipeline(p, p, ("x0", "x1", "x2"))["Q1"]
    out = hpp.amalgamation_pipeline(p, p, ("x0", "x1", "x2"), Q=q1)
    assert out["P_prime"] == p and out["support_identity"] and out["amalgam_ok"]


def test_pipeline_glues_two_triangles():
    p1 = parse_poly("x0*x1 + x0*x3 + x1*x3")
    p2 = parse_poly("x0*x1 + x0*x4 + x1*x4")
    full = parse_poly("x0*x1 + x0*x3 + x1*x3 + x0*x4 + x1*x4 + x3*x4")
    q = dehomogenize(substitute(full, {"x1": SparsePoly.var("x0") + SparsePoly.var("x1")}).with_vars(full.vars), "x0")
    out = hpp.amalgamation_pipeline(p1, p2, ("x0", "x1"), Q=q)
    assert out["P_prime"] == full and out["amalgam_ok"] and out["support_identity"]


def test_pipeline_rejects_mismatch():
    with pytest.raises(RestrictionMismatch):
        hpp.amalgamation_pipeline(parse_poly("x0*x1 + x0*x3"), parse_poly("x0*x1 + x1*x4 + x0^2"), ("x0", "x1"))


def test_pipeline_rejects_bad_q():
    p1 = parse_poly("x0*x1 + x0*x3 + x1*x3")
    p2 = parse_poly("x0*x1 + x0*x4 + x1*x4")
    good = hpp.amalgamation_pipeline(p1, p2, ("x0", "x1"))
    with pytest.raises(RestrictionMismatch):
        hpp.amalgamation_pipeline(p1, p2, ("x0", "x1"), Q=good["Q1"] + parse_poly("x1"))


def test_pipeline_support_not_mconvex():
    # the instance has no amalgam, so the naive glued Q cannot produce one
    inst = hpp.amalgam_instance()
    base = hpp.amalgamation_pipeline(inst["P1"], inst["P2"], ("x0", "x1", "x2"))
    q = base["Q1"] + base["Q2"] - base["Q0"]
    with pytest.raises(hpp.SupportNotMConvex):
        hpp.amalgamation_pipeline(inst["P1"], inst["P2"], ("x0", "x1", "x2"), Q=q)


def test_hyperbolicity_samples_labelled():
    inst = hpp.amalgam_instance()
    out = hpp.amalgamation_pipeline(inst["P1"], inst["P2"], ("x0", "x1", "x2"))
    rep = hpp.hyperbolicity_samples(out["H1"], "x0", ("x0", "x1", "x2"), 100)
    assert rep["status"] == "sampled"
    assert rep["line_tests_passed"] == 100
    assert all(rep["unit_vectors_in_cone"].values()) and rep["shift_point_in_cone"]


def test_proof_chain_symbolic():
    rep = hpp.no_amalgam_proof_chain("symbolic")
    assert [b["equals"] for b in rep["boundary_values"][:7]] == ["2m", "2m", "2m", "m", "2m", "2m", "3m"]
    assert rep["contradiction"] == "3m <= r({1,3,4}) <= 2m"
    assert any(s.get("inferred_by_symmetry") for s in rep["steps"])


@pytest.mark.parametrize("m", [1, 2])
def test_proof_chain_numeric(m):
    rep = hpp.no_amalgam_proof_chain(m)
    assert rep["search_infeasible"]
    assert rep["conclusion"].startswith(f"{2 * m} < {3 * m}")


def test_proof_chain_rejects_bad_m():
    with pytest.raises(ValueError):
        hpp.no_amalgam_proof_chain(0)
