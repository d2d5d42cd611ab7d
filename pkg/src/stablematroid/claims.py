"""Claim registry: each claim id maps to a check function and the status it
is expected to produce.  Check functions return ``(status, details)`` where
details is JSON-ready.

Statuses: ``verified`` (exact certificate), ``falsified`` (exact witness
against a stated property) and ``sampled-pass`` (necessary-only sampled
checks passed; never reported as verified).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable

from . import hpp
from .io import fmt_rational
from .matroid import CATALOG_NAMES, NONFANO_MATRIX, P8_MATRIX, catalog
from .poly import (
    SparsePoly,
    StabilityWitness,
    basis_generating_polynomial,
    count_real_roots,
    restrict_to_line,
    stability_falsify,
)
from .polymatroid import (
    MConvexSet,
    basis_mconvex,
    find_amalgam,
    flats,
    is_modular_pair,
    is_nondegenerate,
    matroid_rank_polymatroid,
    mconvex_from_rank,
    random_mconvex,
    rank_from_mconvex,
    restrict,
    scale,
    sticky_sufficient,
    zero_slice,
)
from .quaternion import (
    I,
    J,
    cauchy_binet_check,
    delta_multiplicativity_check,
    quat_matrix,
    qu_hpp_identity,
    random_quat_matrix,
)

VERIFIED, FALSIFIED, SAMPLED = "verified", "falsified", "sampled-pass"
FAILED = "failed"


@dataclass
class Options:
    seed: int = 0
    m: int | None = None
    samples: int | None = None


@dataclass(frozen=True)
class Claim:
    id: str
    expected: str
    check: Callable[[Options], tuple[str, dict]]
    summary: str


def _status(ok: bool, good: str = VERIFIED) -> str:
    return good if ok else FAILED


# --------------------------------------------------------------------------


def check_amalgam(opts: Options) -> tuple[str, dict]:
    ms = [opts.m] if opts.m is not None else [1, 2, 3]
    inst = hpp.amalgam_instance()
    search = {}
    for m in ms:
        stats: dict = {}
        res = find_amalgam(scale(inst["r1"], m), scale(inst["r2"], m), stats=stats)
        search[str(m)] = {"infeasible": res is None, "nodes": stats.get("nodes")}
    chain = hpp.no_amalgam_proof_chain("symbolic")
    ok = all(v["infeasible"] for v in search.values())
    return _status(ok), {"search": search, "proof_chain": chain}


def check_rayleigh_cubic(opts: Options) -> tuple[str, dict]:
    try:
        coeffs = hpp.verify_rayleigh_cubic()
    except hpp.IdentityMismatch as exc:
        return FAILED, {"error": str(exc)}
    cubic = hpp.rayleigh_cubic_at(1, 1)
    return VERIFIED, {
        "coefficients": {f"t^{k}": c.to_text() for k, c in coeffs.items()},
        "leading_coefficient": coeffs[3].to_text(),
        "a=b=1": {"t=26": fmt_rational(cubic(26))},
    }


def _vdim(name: str, expected: int) -> Callable[[Options], tuple[str, dict]]:
    def check(opts: Options) -> tuple[str, dict]:
        M = catalog(name)
        V, W = hpp.v_space(M), hpp.w_space(M)
        return _status(V.dim == expected and V.contains_space(W)), {
            "matroid": name,
            "bases": len(M.bases),
            "degenerate_quadrangles": len(hpp.degenerate_quadrangles(M)),
            "dim": V.dim,
            "expected_dim": expected,
            "dim_W": W.dim,
        }

    return check


def check_u_vector(opts: Options) -> tuple[str, dict]:
    nf = catalog("nonfano")
    u = hpp.u_vector(NONFANO_MATRIX, nf)
    x = nf.mask((2, 4, 6))
    expected = hpp.LogVector.from_maps(nf.basis_list, [{2: Fraction(1)} if b == x else {} for b in nf.basis_list])
    p8 = catalog("p8")
    v = hpp.u_vector(P8_MATRIX, p8)
    v2 = sorted({int(e) for e in v.coordinate(2)})
    details = {
        "nonfano": {
            "equals_log2_delta_246": u == expected,
            "in_V": hpp.in_v_space(nf, u),
            "in_W": hpp.in_w_space(nf, u),
            "nonzero_entries": [e for e in u.to_json(nf) if e["log"]],
        },
        "p8": {
            "primes": v.primes(),
            "log2_values": v2,
            "in_V": hpp.in_v_space(p8, v),
            "in_W": hpp.in_w_space(p8, v),
        },
    }
    ok = (
        u == expected and details["nonfano"]["in_V"] and not details["nonfano"]["in_W"]
        and v.primes() == [2] and set(v2) <= {0, 1, 2}
        and details["p8"]["in_V"] and not details["p8"]["in_W"]
    )
    return _status(ok), details


def check_embed(opts: Options) -> tuple[str, dict]:
    p8, p1 = catalog("p8"), catalog("p1")
    u = hpp.u_vector(P8_MATRIX, p8)
    rep = hpp.embedding_report(p8, p1, complement=[u.coordinate(2)])
    fano = hpp.embedding_report(catalog("fano"), catalog("nonfano"))
    keys = ("iota_maps_V_into_V_relaxed", "delta_X_in_V_relaxed", "trivial_intersection_with_W_relaxed", "spans_complement")
    ok = all(rep[k] for k in keys) and all(fano[k] for k in keys) and rep["complement_dim"] == 2
    return _status(ok), {"p8_to_p1": rep, "fano_to_nonfano": fano}


def check_cauchy_binet(opts: Options) -> tuple[str, dict]:
    rng = random.Random(opts.seed)
    n_inst = opts.samples or 100
    cb = 0
    for _ in range(n_inst):
        m = rng.randint(1, 3)
        A = random_quat_matrix(rng, m, rng.randint(m, 5))
        cb += cauchy_binet_check(A).holds
    ones = cauchy_binet_check(quat_matrix([[1, 1]]))
    mult = 0
    for _ in range(n_inst):
        k = rng.randint(1, 3)
        mult += delta_multiplicativity_check(random_quat_matrix(rng, k, k), random_quat_matrix(rng, k, k))
    ok = cb == n_inst and mult == n_inst and ones.holds
    return _status(ok), {
        "instances": n_inst,
        "cauchy_binet_holds": cb,
        "multiplicativity_holds": mult,
        "one_one": ones.to_json(),
    }


K4_TU = ((1, 0, 0, 1, 1, 0), (0, 1, 0, -1, 0, 1), (0, 0, 1, 0, -1, -1))
U23_TU = ((1, 0, 1), (0, 1, 1))
QUATERNIONIC = ((1, 0, 1, J), (0, 1, I, 0))

QU_EXAMPLES = {
    "u23_real_tu": U23_TU,
    "k4_graphic_tu": K4_TU,
    "quaternionic_2x4": QUATERNIONIC,
}


def check_qu_hpp(opts: Options) -> tuple[str, dict]:
    details = {}
    ok = True
    for name, rows in QU_EXAMPLES.items():
        A = quat_matrix(rows)
        try:
            rep = qu_hpp_identity(A)
        except (hpp.IdentityMismatch, ValueError, AssertionError) as exc:
            details[name] = {"identity": False, "error": str(exc)}
            ok = False
            continue
        h = basis_generating_polynomial(rep.matroid)
        w = stability_falsify(h)
        details[name] = {
            "matrix": A.to_json(),
            "bases": len(rep.matroid.bases),
            "identity": rep.holds,
            "rhs_terms": len(rep.rhs.terms),
            "stability_falsify": "none-found" if w is None else w.to_json(),
        }
        ok = ok and rep.holds and w is None
    return _status(ok), details


def _catalog_mconvex() -> list[tuple[str, MConvexSet]]:
    out = [(name, basis_mconvex(catalog(name))) for name in CATALOG_NAMES]
    inst = hpp.amalgam_instance()
    out += [("J1", inst["J1"]), ("J2", inst["J2"]), ("uniform3", uniform_example())]
    return out


def uniform_example(n: int = 3) -> MConvexSet:
    """{x in N^n : |x| = n, x_i <= 2}."""
    pts = frozenset(p for p in product(range(3), repeat=n) if sum(p) == n)
    return MConvexSet(tuple(str(i) for i in range(1, n + 1)), pts)


def check_bijection(opts: Options) -> tuple[str, dict]:
    rng = random.Random(opts.seed)
    n_rand = opts.samples or 200
    fails = []
    for name, Jc in _catalog_mconvex():
        r = rank_from_mconvex(Jc)
        if mconvex_from_rank(r) != Jc or rank_from_mconvex(mconvex_from_rank(r)) != r:
            fails.append(name)
    for name in CATALOG_NAMES:
        r = matroid_rank_polymatroid(catalog(name))
        if rank_from_mconvex(mconvex_from_rank(r)) != r:
            fails.append(f"rank:{name}")
    rand_ok = 0
    for _ in range(n_rand):
        Jr = random_mconvex(rng, 5)
        r = rank_from_mconvex(Jr)
        rand_ok += mconvex_from_rank(r) == Jr and rank_from_mconvex(mconvex_from_rank(r)) == r
    U = rank_from_mconvex(uniform_example())
    f1, f2 = U.mask(["1"]), U.mask(["2"])
    fl = flats(U)
    uniform = {
        "flats_1_and_2": f1 in fl and f2 in fl,
        "modular": is_modular_pair(U, f1, f2),
        "sticky_sufficient": sticky_sufficient(U),
    }
    ok = not fails and rand_ok == n_rand and uniform["flats_1_and_2"] and not uniform["modular"] and not uniform["sticky_sufficient"]
    return _status(ok), {
        "catalog_failures": fails,
        "random_instances": n_rand,
        "random_round_trips": rand_ok,
        "uniform_example": uniform,
    }


def check_mconvrest(opts: Options) -> tuple[str, dict]:
    rng = random.Random(opts.seed)
    n_rand = opts.samples or 200
    cases = [(name, Jc) for name, Jc in _catalog_mconvex() if len(Jc.ground) <= 8]
    cases += [(f"random{i}", random_mconvex(rng, 5)) for i in range(n_rand)]
    tested = mismatches = 0
    for name, Jc in cases:
        r = rank_from_mconvex(Jc)
        for k in range(len(Jc.ground) + 1):
            for T in combinations(Jc.ground, k):
                if not is_nondegenerate(Jc, T):
                    continue
                tested += 1
                lhs = restrict(r, T).set_function()
                rhs = rank_from_mconvex(zero_slice(Jc, T)).set_function()
                if lhs != rhs:
                    mismatches += 1
    inst = hpp.amalgam_instance()
    instance_ok = restrict(inst["r1"], ("0", "1", "2")).set_function() == rank_from_mconvex(
        MConvexSet(("0", "1", "2"), uniform_example().points)
    ).set_function()
    return _status(mismatches == 0 and instance_ok), {
        "restrictions_tested": tested,
        "mismatches": mismatches,
        "r1_restricted_to_012_is_uniform_example": instance_ok,
    }


def check_relax_inherits(opts: Options) -> tuple[str, dict]:
    details = {}
    ok = True
    for big, small in (("p8", "p1"), ("fano", "nonfano")):
        dq_big, dq_small = hpp.quadrangle_keys(catalog(big)), hpp.quadrangle_keys(catalog(small))
        sub = dq_small <= dq_big
        details[f"{small}_in_{big}"] = {"subset": sub, big: len(dq_big), small: len(dq_small)}
        ok = ok and sub
    return _status(ok), details


def check_hypcone(opts: Options) -> tuple[str, dict]:
    inst = hpp.amalgam_instance()
    E0 = ("x0", "x1", "x2")
    pipe = hpp.amalgamation_pipeline(inst["P1"], inst["P2"], E0)
    n = opts.samples or 100
    s1 = hpp.hyperbolicity_samples(pipe["H1"], "x0", E0, n)
    s2 = hpp.hyperbolicity_samples(pipe["H2"], "x0", E0, n)
    p0_support = MConvexSet(("0", "1", "2"), pipe["P0"].support())
    ok = all(
        s["line_tests_passed"] == s["line_tests"] and all(s["unit_vectors_in_cone"].values()) and s["shift_point_in_cone"]
        for s in (s1, s2)
    ) and p0_support.points == uniform_example().points
    return _status(ok, SAMPLED), {
        "H1": s1,
        "H2": s2,
        "P0": pipe["P0"].to_text(),
        "P0_support_is_uniform_example": p0_support.points == uniform_example().points,
        "note": "sampled, necessary-only",
    }


# t -> P(t*1 + v) is 30t^3 + 26t^2 - 3, which has a single real zero.
F7_PINNED_WITNESS = StabilityWitness("line", e=(1,) * 7, v=(0, 0, 1, 0, -1, 1, 1))


def fano_plus(mu: int) -> SparsePoly:
    M = catalog("fano")
    h = basis_generating_polynomial(M)
    return h + SparsePoly(h.vars, {tuple(int(lab in (2, 4, 6)) for lab in M.ground): mu})


def check_f7_nonstable(opts: Options) -> tuple[str, dict]:
    P = fano_plus(2)
    pinned = F7_PINNED_WITNESS.verify(P)
    u = restrict_to_line(P, F7_PINNED_WITNESS.e, F7_PINNED_WITNESS.v)
    found = stability_falsify(P)
    return _status(pinned, FALSIFIED), {
        "polynomial": "h_F7 + 2*x2*x4*x6",
        "witness": F7_PINNED_WITNESS.to_json(),
        "restriction": [fmt_rational(c) for c in u.coeffs],
        "real_zeros": count_real_roots(u),
        "degree": u.degree,
        "grid_witness": None if found is None else found.to_json(),
    }


REGISTRY: dict[str, Claim] = {
    c.id: c
    for c in (
        Claim("amalgam-counterexample", VERIFIED, check_amalgam, "scaled specialized polymatroids admit no amalgam"),
        Claim("rayleigh-cubic", VERIFIED, check_rayleigh_cubic, "Rayleigh difference of F_ab on the test line"),
        Claim("vdim-p8", VERIFIED, _vdim("p8", 9), "dim V_P8 = 9"),
        Claim("vdim-p1", VERIFIED, _vdim("p1", 10), "dim V_P1 = 10"),
        Claim("u-vector-nonfano", VERIFIED, check_u_vector, "log-determinant vectors lie in V but not W"),
        Claim("embed-complement", VERIFIED, check_embed, "relaxation embedding spans a complement of W"),
        Claim("qu-cauchy-binet", VERIFIED, check_cauchy_binet, "quaternionic Cauchy-Binet and delta multiplicativity"),
        Claim("qu-hpp-identity", VERIFIED, check_qu_hpp, "h_M^2 equals det(phi(A) X phi(A)*)"),
        Claim("mconvex-bijection", VERIFIED, check_bijection, "M-convex sets and polymatroids round-trip"),
        Claim("mconvrest", VERIFIED, check_mconvrest, "restriction of r_J equals r of the zero slice"),
        Claim("lemma-relax", VERIFIED, check_relax_inherits, "quadrangles of a relaxation are quadrangles of the original"),
        Claim("hypcone-sampled", SAMPLED, check_hypcone, "shifted polynomials pass sampled hyperbolicity checks"),
        Claim("f7-nonstable", FALSIFIED, check_f7_nonstable, "h_F7 + 2*x2*x4*x6 is not stable"),
    )
}


def run_claim(claim_id: str, opts: Options | None = None) -> dict:
    claim = REGISTRY[claim_id]
    status, details = claim.check(opts or Options())
    return {
        "claim": claim.id,
        "status": status,
        "expected": claim.expected,
        "matches": status == claim.expected,
        "details": details,
    }
