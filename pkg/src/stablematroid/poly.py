"""Exact sparse multivariate polynomials over Q and real-rootedness tests.

Polynomials carry an ordered tuple of variable names; arithmetic between
polynomials over different variable tuples works on the union (left operand's
order first).  Equality is semantic: variables that do not occur do not matter.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


class PolynomialError(ValueError):
    pass


class DegreeTooSmall(PolynomialError):
    pass


class ZeroPolynomial(PolynomialError):
    pass


class NotRealRooted(PolynomialError):
    pass


class ParseError(PolynomialError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class SparsePoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise PolynomialError(f"duplicate variable names in {self.vars}")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != len(self.vars):
                raise PolynomialError("exponent vector length does not match variables")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms: dict[tuple[int, ...], Fraction] = clean

    # construction -----------------------------------------------------
    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "SparsePoly":
        vars = (name,) if vars is None else tuple(vars)
        exp = tuple(int(v == name) for v in vars)
        if sum(exp) != 1:
            raise PolynomialError(f"{name!r} not among {vars}")
        return cls(vars, {exp: 1})

    @classmethod
    def const(cls, c: Number, vars: Sequence[str] = ()) -> "SparsePoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Sequence[int], c: Number = 1) -> "SparsePoly":
        return cls(vars, {tuple(exp): c})

    # variable bookkeeping ---------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> "SparsePoly":
        """Re-express over ``vars``; every occurring variable must be kept."""
        vars = tuple(vars)
        pos = {v: i for i, v in enumerate(vars)}
        used = self.used_vars()
        missing = [v for v in used if v not in pos]
        if missing:
            raise PolynomialError(f"variables {missing} would be dropped")
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(vars)
            for v, a in zip(self.vars, exp):
                if a:
                    new[pos[v]] = a
            terms[tuple(new)] = c
        return SparsePoly(vars, terms)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def compact(self) -> "SparsePoly":
        return self.with_vars(self.used_vars())

    def _align(self, other: "SparsePoly"):
        if self.vars == other.vars:
            return self, other
        extra = tuple(v for v in other.vars if v not in set(self.vars))
        vars = self.vars + extra
        return self.with_vars(vars), other.with_vars(vars)

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return other
        return SparsePoly.const(_frac(other), self.vars)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._align(self._coerce(other))
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return SparsePoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = _frac(other)
            return SparsePoly(self.vars, {e: c * v for e, v in self.terms.items()})
        a, b = self._align(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolynomialError("negative powers are not polynomials")
        result = SparsePoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection -------------------------------------------------------
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_multiaffine(self) -> bool:
        return all(a <= 1 for e in self.terms for a in e)

    def support(self) -> set[tuple[int, ...]]:
        return set(self.terms)

    def coefficient(self, monomial: Mapping[str, int] | Sequence[int]) -> Fraction:
        if isinstance(monomial, Mapping):
            for v, a in monomial.items():
                if a and v not in self.vars:
                    return Fraction(0)
            exp = tuple(monomial.get(v, 0) for v in self.vars)
        else:
            exp = tuple(monomial)
        return self.terms.get(exp, Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Graded-lex order: higher total degree first, then lexicographically larger."""
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-a for a in kv[0])))

    # evaluation -------------------------------------------------------
    def evaluate(self, point: Mapping[str, Number] | Sequence[Number]) -> Fraction:
        if not isinstance(point, Mapping):
            if len(point) != len(self.vars):
                raise PolynomialError("point length does not match variables")
            point = dict(zip(self.vars, point))
        vals = []
        for i, v in enumerate(self.vars):
            if v in point:
                vals.append(_frac(point[v]))
            elif any(e[i] for e in self.terms):
                raise PolynomialError(f"no value for variable {v!r}")
            else:
                vals.append(Fraction(0))
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for x, a in zip(vals, exp):
                if a:
                    term *= x**a
            total += term
        return total

    def __call__(self, *args, **kwargs):
        if kwargs:
            return self.evaluate(kwargs)
        if len(args) == 1 and isinstance(args[0], (Mapping, list, tuple)):
            return self.evaluate(args[0])
        return self.evaluate(args)

    def set_zero(self, vars: Iterable[str]) -> "SparsePoly":
        """Restriction x_v = 0 for every v in ``vars`` (variables stay in the tuple)."""
        idx = [self.vars.index(v) for v in vars if v in self.vars]
        return SparsePoly(self.vars, {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in idx)})

    def keep_only(self, vars: Iterable[str]) -> "SparsePoly":
        """Set every variable outside ``vars`` to zero and drop it."""
        keep = set(vars)
        zeroed = self.set_zero([v for v in self.vars if v not in keep])
        return zeroed.with_vars([v for v in self.vars if v in keep])

    def collect(self, var: str) -> dict[int, "SparsePoly"]:
        """Coefficients of powers of ``var`` as polynomials in the other variables."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: SparsePoly(rest, t) for k, t in sorted(groups.items())}

    # text / json ------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for v, a in zip(self.vars, exp):
                if a == 1:
                    factors.append(v)
                elif a > 1:
                    factors.append(f"{v}^{a}")
            mag = abs(c)
            if not factors:
                body = _fmt(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _fmt(mag) + "*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SparsePoly({self.to_text()!r}, vars={self.vars})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), _fmt(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SparsePoly":
        try:
            vars = [str(v) for v in data["vars"]]
            terms: dict = {}
            for exp, c in data["terms"]:
                exp = tuple(int(a) for a in exp)
                if any(a < 0 for a in exp):
                    raise ParseError("negative exponent")
                terms[exp] = terms.get(exp, Fraction(0)) + Fraction(str(c))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from None
        return cls(vars, terms)

    @classmethod
    def from_text(cls, text: str, vars: Sequence[str] | None = None) -> "SparsePoly":
        return parse_poly(text, vars)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    return tokens


class _Parser:
    # expr := term (('+'|'-') term)* ; term := factor ('*' factor)*
    # factor := ('+'|'-') factor | atom ('^' int)? ; atom := num | name | '(' expr ')'

    def __init__(self, tokens, names):
        self.tokens = tokens
        self.names = tuple(names)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expr(self) -> SparsePoly:
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> SparsePoly:
        out = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> SparsePoly:
        if self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            inner = self.factor()
            return inner if op == "+" else -inner
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom(self) -> SparsePoly:
        kind, val = self.take()
        if kind == "num":
            return SparsePoly.const(Fraction(val), self.names)
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}")
            return SparsePoly.var(val, self.names)
        if val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("expected ')'")
            return inner
        raise ParseError(f"unexpected {val!r}")


def parse_poly(text: str, vars: Sequence[str] | None = None) -> SparsePoly:
    """Parse text such as ``"3/2*x0^2*x1 - (x2 + 1)^2"``.

    Variables are ordered by first appearance unless ``vars`` is given.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    names: list[str] = list(vars) if vars is not None else []
    if vars is None:
        for kind, val in tokens:
            if kind == "name" and val not in names:
                names.append(val)
    parser = _Parser(tokens, names)
    out = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"unexpected {parser.peek()[1]!r}")
    return out.with_vars(names)


def variables(names: Sequence[str]) -> list[SparsePoly]:
    return [SparsePoly.var(n, names) for n in names]


# ----------------------------------------------------------------------
# calculus and substitution


def derivative(P: SparsePoly, var: str) -> SparsePoly:
    if var not in P.vars:
        return SparsePoly(P.vars)
    i = P.vars.index(var)
    terms = {}
    for e, c in P.terms.items():
        if e[i]:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[ne] = c * e[i]
    return SparsePoly(P.vars, terms)


def substitute(P: SparsePoly, assignment: Mapping[str, SparsePoly | Number]) -> SparsePoly:
    """Simultaneous substitution ``var -> polynomial`` with exact expansion."""
    unknown = [v for v in assignment if v not in P.vars]
    if unknown:
        raise PolynomialError(f"cannot substitute for unknown variables {unknown}")
    images = {v: (p if isinstance(p, SparsePoly) else SparsePoly.const(_frac(p))) for v, p in assignment.items()}
    kept = tuple(v for v in P.vars if v not in images)
    out_vars = list(kept)
    for img in images.values():
        for v in img.vars:
            if v not in out_vars:
                out_vars.append(v)
    images = {v: img.with_vars(out_vars) for v, img in images.items()}
    kept_pos = {v: out_vars.index(v) for v in kept}
    power_cache: dict[tuple[str, int], SparsePoly] = {}

    def power(v: str, a: int) -> SparsePoly:
        key = (v, a)
        if key not in power_cache:
            power_cache[key] = images[v] if a == 1 else power(v, a - 1) * images[v]
        return power_cache[key]

    result: dict = {}
    for e, c in P.terms.items():
        mono = [0] * len(out_vars)
        piece = None
        for v, a in zip(P.vars, e):
            if not a:
                continue
            if v in kept_pos:
                mono[kept_pos[v]] += a
            else:
                piece = power(v, a) if piece is None else piece * power(v, a)
        base = SparsePoly(out_vars, {tuple(mono): c})
        term = base if piece is None else base * piece
        for te, tc in term.terms.items():
            result[te] = result.get(te, Fraction(0)) + tc
    return SparsePoly(out_vars, result)


def rayleigh_difference(P: SparsePoly, i: str, j: str) -> SparsePoly:
    """∂_i P · ∂_j P − P · ∂_i ∂_j P."""
    if i == j:
        raise PolynomialError("Rayleigh difference needs two distinct variables")
    di = derivative(P, i)
    dj = derivative(P, j)
    return di * dj - P * derivative(di, j)


def homogenize(Q: SparsePoly, x0: str, degree: int) -> SparsePoly:
    """x0^degree · Q(x / x0); x0 is prepended to the variables if new."""
    if x0 in Q.used_vars():
        raise PolynomialError(f"{x0!r} already occurs in the polynomial")
    if degree < Q.degree():
        raise DegreeTooSmall(f"degree {degree} < deg Q = {Q.degree()}")
    vars = Q.vars if x0 in Q.vars else (x0,) + Q.vars
    base = Q.with_vars(vars)
    i = vars.index(x0)
    terms = {}
    for e, c in base.terms.items():
        e = list(e)
        e[i] = degree - sum(e)
        terms[tuple(e)] = c
    return SparsePoly(vars, terms)


def dehomogenize(H: SparsePoly, x0: str) -> SparsePoly:
    """Set x0 = 1 and drop it from the variables."""
    if not H.is_homogeneous():
        raise PolynomialError("dehomogenize expects a homogeneous polynomial")
    if x0 not in H.vars:
        return H
    i = H.vars.index(x0)
    terms: dict = {}
    for e, c in H.terms.items():
        ne = e[:i] + e[i + 1:]
        terms[ne] = terms.get(ne, Fraction(0)) + c
    return SparsePoly(H.vars[:i] + H.vars[i + 1:], terms)


def truncate_divide(P: SparsePoly, x0: str, k: int) -> SparsePoly:
    """Keep the terms divisible by x0^k and divide them by x0^k."""
    if k < 0:
        raise PolynomialError("k must be nonnegative")
    if k == 0:
        return P
    if x0 not in P.vars:
        return SparsePoly(P.vars)
    i = P.vars.index(x0)
    terms = {}
    for e, c in P.terms.items():
        if e[i] >= k:
            terms[e[:i] + (e[i] - k,) + e[i + 1:]] = c
    return SparsePoly(P.vars, terms)


def generating_polynomial(J, prefix: str = "x") -> SparsePoly:
    """h_J = Σ_{α∈J} x^α / α!; variable names are ``prefix + str(label)``."""
    vars = tuple(f"{prefix}{label}" for label in J.ground)
    terms = {}
    for alpha in J.points:
        terms[alpha] = Fraction(1, math.prod(math.factorial(a) for a in alpha))
    return SparsePoly(vars, terms)


def basis_generating_polynomial(M, prefix: str = "x", coefficients: Mapping[int, Number] | None = None) -> SparsePoly:
    """Σ_B a_B Π_{i∈B} x_i over the bases of ``M`` (a_B = 1 by default)."""
    vars = tuple(f"{prefix}{label}" for label in M.ground)
    terms = {}
    for b in M.bases:
        exp = tuple((b >> i) & 1 for i in range(M.n))
        terms[exp] = 1 if coefficients is None else coefficients[b]
    return SparsePoly(vars, terms)


# ----------------------------------------------------------------------
# univariate polynomials and Sturm sequences


@dataclass(frozen=True)
class UnivariatePoly:
    """Exact univariate polynomial, coefficients in ascending degree."""

    coeffs: tuple = field(default=())

    def __post_init__(self):
        c = [_frac(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x: Number) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UnivariatePoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self):
        return UnivariatePoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UnivariatePoly):
            c = _frac(other)
            return UnivariatePoly(tuple(c * x for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return UnivariatePoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePoly(tuple(out))

    __rmul__ = __mul__

    def divmod(self, other: "UnivariatePoly") -> tuple["UnivariatePoly", "UnivariatePoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        dv = other.degree
        while len(rem) - 1 >= dv and rem:
            f = rem[-1] / lead
            k = len(rem) - 1 - dv
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UnivariatePoly(tuple(q)), UnivariatePoly(tuple(rem))

    def monic(self) -> "UnivariatePoly":
        return self * (1 / self.leading)

    def gcd(self, other: "UnivariatePoly") -> "UnivariatePoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def squarefree(self) -> "UnivariatePoly":
        if self.degree <= 0:
            return self
        g = self.gcd(self.derivative())
        return self.divmod(g)[0]

    @classmethod
    def from_sparse(cls, P: SparsePoly, var: str) -> "UnivariatePoly":
        if set(P.used_vars()) - {var}:
            raise PolynomialError("not univariate in " + var)
        if var not in P.vars:
            return cls((P.terms.get((0,) * len(P.vars), 0),))
        i = P.vars.index(var)
        deg = P.degree_in(var)
        c = [Fraction(0)] * (deg + 1)
        for e, v in P.terms.items():
            c[e[i]] += v
        return cls(tuple(c))


def sturm_chain(u: UnivariatePoly) -> list[UnivariatePoly]:
    chain = [u, u.derivative()]
    while not chain[-1].is_zero():
        chain.append(-chain[-2].divmod(chain[-1])[1])
    chain.pop()
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signs_at(chain: list[UnivariatePoly], x: Number | None, side: int) -> list[int]:
    """Signs of the chain at x, or at side*infinity when x is None."""
    if x is None:
        return [_sign(p.leading) * (side if p.degree % 2 else 1) for p in chain]
    return [_sign(p(x)) for p in chain]


def count_roots_in(u: UnivariatePoly, lo: Number | None = None, hi: Number | None = None) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi].

    ``None`` stands for -infinity (lo) or +infinity (hi).
    """
    if u.is_zero():
        raise ZeroPolynomial("the zero polynomial has no finite root count")
    if lo is not None and hi is not None and _frac(lo) >= _frac(hi):
        return 0
    chain = sturm_chain(u.squarefree())
    return _variations(_signs_at(chain, lo, -1)) - _variations(_signs_at(chain, hi, +1))


def count_real_roots(u: UnivariatePoly) -> int:
    return count_roots_in(u, None, None)


def sturm_real_rooted(u: UnivariatePoly) -> bool:
    """All complex roots real (counted via the square-free part)."""
    if u.is_zero():
        raise ZeroPolynomial("real-rootedness of the zero polynomial is undefined")
    sf = u.squarefree()
    return count_roots_in(sf) == sf.degree


# ----------------------------------------------------------------------
# lines, hyperbolicity cones and falsification


def _as_vector(P: SparsePoly, vec) -> list[Fraction]:
    if isinstance(vec, Mapping):
        return [_frac(vec.get(v, 0)) for v in P.vars]
    vec = [_frac(x) for x in vec]
    if len(vec) != len(P.vars):
        raise PolynomialError(f"vector of length {len(vec)} for {len(P.vars)} variables")
    return vec


def restrict_to_line(P: SparsePoly, e, v) -> UnivariatePoly:
    """The univariate polynomial t -> P(t·e + v)."""
    e = _as_vector(P, e)
    v = _as_vector(P, v)
    lin = [UnivariatePoly((vi, ei)) for ei, vi in zip(e, v)]
    powers: dict[tuple[int, int], UnivariatePoly] = {}

    def power(i: int, a: int) -> UnivariatePoly:
        if (i, a) not in powers:
            powers[(i, a)] = lin[i] if a == 1 else power(i, a - 1) * lin[i]
        return powers[(i, a)]

    total = UnivariatePoly(())
    for exp, c in P.terms.items():
        term = UnivariatePoly((c,))
        for i, a in enumerate(exp):
            if a:
                term = term * power(i, a)
        total = total + term
    return total


def line_test(P: SparsePoly, e, v) -> bool:
    """True iff P(t·e + v) has only real zeros (an identically zero restriction counts as true)."""
    u = restrict_to_line(P, e, v)
    if u.is_zero():
        return True
    return sturm_real_rooted(u)


def cone_contains(P: SparsePoly, e, w) -> bool:
    """Membership of w in the hyperbolicity cone of P at e.

    The cone is taken so that e itself and, for stable P with e > 0, every unit
    vector belong to it: all real zeros of t -> P(t·e + w) must be <= 0.
    """
    u = restrict_to_line(P, e, w)
    if u.is_zero():
        raise NotRealRooted("P vanishes identically on the line")
    if not sturm_real_rooted(u):
        raise NotRealRooted("P(t·e + w) has non-real zeros")
    return count_roots_in(u, 0, None) == 0


@dataclass(frozen=True)
class StabilityWitness:
    """A certified obstruction to stability.

    kind ``"line"``: P(t·e + v) has a non-real zero with e > 0;
    kind ``"rayleigh"``: Δ_{i,j} P(point) < 0 for multiaffine P;
    kind ``"vanishes"``: P(e) = 0 at a positive point e.
    """

    kind: str
    e: tuple | None = None
    v: tuple | None = None
    point: tuple | None = None
    pair: tuple | None = None
    value: Fraction | None = None

    def verify(self, P: SparsePoly) -> bool:
        if self.kind == "line":
            if any(x <= 0 for x in self.e):
                return False
            u = restrict_to_line(P, self.e, self.v)
            return not u.is_zero() and not sturm_real_rooted(u)
        if self.kind == "rayleigh":
            if not P.is_multiaffine():
                return False
            i, j = self.pair
            return rayleigh_difference(P, i, j).evaluate(dict(zip(P.vars, self.point))) < 0
        if self.kind == "vanishes":
            return all(x > 0 for x in self.e) and P.evaluate(self.e) == 0
        return False

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        for name in ("e", "v", "point"):
            val = getattr(self, name)
            if val is not None:
                out[name] = [_fmt(x) for x in val]
        if self.pair is not None:
            out["pair"] = list(self.pair)
        if self.value is not None:
            out["value"] = _fmt(self.value)
        return out


def _radical_inverse(k: int, base: int) -> Fraction:
    num, den = 0, 1
    while k:
        k, digit = divmod(k, base)
        den *= base
        num = num * base + digit
    return Fraction(num, den)


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def halton_points(n: int, dim: int, lo: Number = -2, hi: Number = 2, start: int = 1) -> list[tuple[Fraction, ...]]:
    """Deterministic low-discrepancy rational points in [lo, hi]^dim."""
    lo, hi = _frac(lo), _frac(hi)
    out = []
    for k in range(start, start + n):
        out.append(tuple(lo + (hi - lo) * _radical_inverse(k, _PRIMES[d % len(_PRIMES)] ** (1 + d // len(_PRIMES))) for d in range(dim)))
    return out


def default_grid(dim: int, n: int = 48) -> tuple[list[tuple], list[tuple]]:
    """Built-in sample grid: (positive directions e, base points v)."""
    ones = tuple(Fraction(1) for _ in range(dim))
    directions = [ones] + halton_points(7, dim, Fraction(1, 4), 4, start=11)
    points = halton_points(n, dim, -2, 2)
    points += [tuple(3 * x for x in p) for p in halton_points(n // 2, dim, -1, 1, start=n + 1)]
    return directions, points


def _rayleigh_scan(P: SparsePoly, points: Sequence[Sequence[Fraction]]) -> StabilityWitness | None:
    n = len(P.vars)
    terms = list(P.terms.items())
    for i, j in combinations(range(n), 2):
        for x in points:
            a = b = c = d = Fraction(0)
            for e, coef in terms:
                val = coef
                for k, ek in enumerate(e):
                    if ek and k != i and k != j:
                        val *= x[k]
                if e[i] and e[j]:
                    d += val
                elif e[i]:
                    b += val
                elif e[j]:
                    c += val
                else:
                    a += val
            value = b * c - a * d
            if value < 0:
                return StabilityWitness("rayleigh", point=tuple(x), pair=(P.vars[i], P.vars[j]), value=value)
    return None


def stability_falsify(
    P: SparsePoly,
    samples: Iterable[Sequence[Number]] = (),
    *,
    use_grid: bool = True,
    grid_size: int = 48,
) -> StabilityWitness | None:
    """Search for a certified proof that homogeneous P is not stable.

    Line tests run along positive directions e through every sample point v;
    for multiaffine P the Rayleigh differences Δ_{i,j} P are evaluated at the
    same points.  Returns the first witness, or None (which proves nothing).
    """
    if not P.is_homogeneous():
        raise PolynomialError("stability_falsify expects a homogeneous polynomial")
    if P.is_zero() or P.degree() <= 0:
        return None
    dim = len(P.vars)
    points = [tuple(_frac(x) for x in p) for p in samples]
    for p in points:
        if len(p) != dim:
            raise PolynomialError("sample point length does not match variables")
    directions = [tuple(Fraction(1) for _ in range(dim))]
    if use_grid:
        directions, grid_points = default_grid(dim, grid_size)
        points = points + grid_points
    for e in directions:
        if P.evaluate(e) == 0:
            return StabilityWitness("vanishes", e=e)
    if P.degree() >= 2:
        for e in directions:
            for v in points:
                u = restrict_to_line(P, e, v)
                if not u.is_zero() and not sturm_real_rooted(u):
                    return StabilityWitness("line", e=e, v=v)
    if P.is_multiaffine() and P.degree() >= 2:
        return _rayleigh_scan(P, points)
    return None
