from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from stablematroid.hpp import f_ab_specialized, rayleigh_point
from stablematroid.matroid import catalog, uniform_matroid
from stablematroid.poly import (
    DegreeTooSmall,
    NotRealRooted,
    ParseError,
    SparsePoly,
    StabilityWitness,
    UnivariatePoly,
    ZeroPolynomial,
    basis_generating_polynomial,
    cone_contains,
    count_real_roots,
    count_roots_in,
    dehomogenize,
    derivative,
    generating_polynomial,
    homogenize,
    line_test,
    parse_poly,
    rayleigh_difference,
    stability_falsify,
    sturm_real_rooted,
    substitute,
    truncate_divide,
)
from stablematroid.polymatroid import MConvexSet, basis_mconvex
from stablematroid.claims import fano_plus, uniform_example

P = parse_poly


def to_sympy(p: SparsePoly):
    syms = sympy.symbols(p.vars) if p.vars else ()
    if len(p.vars) == 1:
        syms = (syms,)
    expr = 0
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, a in zip(syms, e):
            term *= s**a
        expr += term
    return sympy.expand(expr)


@pytest.mark.parametrize(
    "text",
    ["x^2*y - 3/2*y + 1", "(x + y)^3", "x0*x1 + x0*x3 - 7", "2*(a - b)*(a + b)"],
)
def test_parse_matches_sympy(text):
    assert to_sympy(P(text)) == sympy.expand(sympy.sympify(text.replace("^", "**")))


@pytest.mark.parametrize("bad", ["x + * y", "x^", "(x + y", "x ^ -1", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


def test_text_and_json_round_trip():
    p = P("3/4*x^2*y - y^3 + 2")
    assert P(p.to_text()) == p
    assert SparsePoly.from_json(p.to_json()) == p


def test_graded_lex_text():
    assert P("1 + x + x*y + y^2").to_text() == "x*y + y^2 + x + 1"


def test_arithmetic_against_sympy():
    a, b = P("x^2 + 2*x*y - 1/3"), P("y - x + 5")
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(b**3) == sympy.expand(to_sympy(b) ** 3)


def test_derivative():
    assert derivative(P("x^2*y"), "x") == P("2*x*y")
    assert derivative(P("y").with_vars(("x", "y")), "x").is_zero()


def test_derivative_of_hp8_support():
    M = catalog("p8")
    h = basis_generating_polynomial(M)
    d = derivative(h, "x0")
    expected = {tuple(0 if i == 0 else (b >> i) & 1 for i in range(8)) for b in M.bases if b & 1}
    assert d.support() == expected


def test_substitute():
    assert substitute(P("x + y"), {"y": 0}) == P("x")
    x0, x, y = SparsePoly.var("x0"), SparsePoly.var("x"), SparsePoly.var("y")
    assert substitute(P("x*y"), {"x": x0 + x, "y": x0 + y}) == P("x0^2 + x0*x + x0*y + x*y")


def test_generating_polynomials():
    J = MConvexSet(("1", "2"), frozenset({(1, 0), (0, 1)}))
    assert generating_polynomial(J) == P("x1 + x2")
    h = generating_polynomial(uniform_example())
    assert h.coefficient({"x1": 2, "x2": 1}) == Fraction(1, 2)
    assert h.coefficient({"x1": 1, "x2": 1, "x3": 1}) == 1
    hf = generating_polynomial(basis_mconvex(catalog("fano")))
    assert len(hf.terms) == 28 and set(hf.terms.values()) == {1} and hf.is_multiaffine()


@pytest.mark.parametrize(
    "poly, expected",
    [
        ("x1*x2", "0*x3"),
        ("x1*x2 + x3^2", "-x3^2"),
        ("x1*x2 + x1*x3 + x2*x3", "x3^2"),
    ],
)
def test_rayleigh_difference(poly, expected):
    assert rayleigh_difference(P(poly), "x1", "x2") == P(expected)


def test_rayleigh_square_without_second_variable():
    p = P("x1^2").with_vars(("x1", "x2"))
    assert rayleigh_difference(p, "x1", "x2").is_zero()


def test_homogenize():
    assert homogenize(P("1 + x"), "x0", 1) == P("x0 + x")
    assert homogenize(P("1 + x"), "x0", 3) == P("x0^3 + x0^2*x")
    with pytest.raises(DegreeTooSmall):
        homogenize(P("x^2"), "x0", 1)


def test_dehomogenize_round_trip():
    q = P("x^2 + 3*x*y + 2")
    assert dehomogenize(homogenize(q, "x0", 4), "x0") == q


def test_truncate_divide():
    assert truncate_divide(P("x0^2 + x0*x + y^2"), "x0", 1) == P("x0 + x").with_vars(("x0", "x", "y"))
    p = P("x0*x + y")
    assert truncate_divide(p, "x0", 0) == p


@pytest.mark.parametrize(
    "coeffs, real_rooted, roots",
    [
        ((-1, 0, 1), True, 2),
        ((1, 0, 1), False, 0),
        ((1, 2, 1), True, 1),
        ((0, -2, 0, 1), True, 3),
    ],
)
def test_sturm(coeffs, real_rooted, roots):
    u = UnivariatePoly(coeffs)
    assert sturm_real_rooted(u) is real_rooted
    assert count_real_roots(u) == roots


def test_sturm_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        sturm_real_rooted(UnivariatePoly(()))


def test_count_roots_interval_half_open():
    u = UnivariatePoly((-1, 0, 1))  # roots -1, 1
    assert count_roots_in(u, -1, 1) == 1
    assert count_roots_in(u, None, 0) == 1
    assert count_roots_in(u, 0, None) == 1


def test_sturm_against_sympy():
    t = sympy.Symbol("t")
    for coeffs in [(3, -7, 0, 2, 1), (5, 0, -4, 0, 1, 1), (-2, 1, 1, -1)]:
        u = UnivariatePoly(coeffs)
        expr = sum(c * t**i for i, c in enumerate(coeffs))
        assert count_real_roots(u) == len(set(sympy.real_roots(expr)))


def test_line_tests():
    assert line_test(P("x^2 - y^2"), (1, 0), (3, 7))
    assert not line_test(P("x^2 + y^2"), (1, 0), (0, 1))


def test_cone_contains():
    xy = P("x*y")
    assert cone_contains(xy, (1, 1), (1, 0))
    assert not cone_contains(xy, (1, 1), (-1, -1))
    with pytest.raises(NotRealRooted):
        cone_contains(P("x^2 + y^2"), (1, 0), (0, 1))


@pytest.mark.parametrize("name", ["f7m4", "f7m5"])
def test_unit_vectors_in_cone(name):
    h = basis_generating_polynomial(catalog(name))
    n = len(h.vars)
    for i in range(n):
        assert cone_contains(h, (1,) * n, [int(j == i) for j in range(n)])


def test_falsify_trivial_cases():
    w = stability_falsify(P("x^2 + y^2"))
    assert w is not None and w.kind == "line" and w.verify(P("x^2 + y^2"))
    assert stability_falsify(P("x + y")) is None


@pytest.mark.parametrize("mu", [0, 1, 2, 3, 5])
def test_fano_plus_mu_falsified(mu):
    p = fano_plus(mu)
    w = stability_falsify(p)
    assert w is not None and w.verify(p)


def test_f_ab_rayleigh_witness_at_t26():
    F = f_ab_specialized(1, 1).compact()
    point = tuple(rayleigh_point(26)[v] for v in F.vars)
    w = StabilityWitness("rayleigh", point=point, pair=("x0", "x1"), value=Fraction(-650))
    assert w.verify(F)
    assert rayleigh_difference(F, "x0", "x1").evaluate(dict(zip(F.vars, point))) == -650
    assert stability_falsify(F) is not None


@pytest.mark.parametrize("name", ["u(2,4)", "graphic_g1"])
def test_hpp_matroids_not_falsified(name):
    M = catalog(name) if name != "u(2,4)" else uniform_matroid(2, 4)
    assert stability_falsify(basis_generating_polynomial(M)) is None
