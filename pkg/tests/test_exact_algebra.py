from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.errors import InvalidInput
from cremona.exact_algebra import (
    HomogPoly,
    format_poly,
    multiplicity_at,
    normalize_point,
    parse_poly,
    poly_gcd,
)

X, Y, Z = sympy.symbols("x y z")


def to_sympy(p: HomogPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * X**i * Y**j * Z**k
                for (i, j, k), c in p.terms.items()), sympy.Integer(0))


def from_sympy(e, degree: int) -> HomogPoly:
    poly = sympy.Poly(sympy.expand(e), X, Y, Z)
    out = HomogPoly.zero(degree)
    for exp, c in poly.terms():
        out = out + HomogPoly.monomial(exp, Fraction(int(c.p), int(c.q)))
    return out


@st.composite
def forms(draw, degree=None, max_degree=4, coeff=5):
    n = draw(st.integers(0, max_degree)) if degree is None else degree
    p = HomogPoly.zero(n)
    for i in range(n + 1):
        for k in range(n + 1 - i):
            c = draw(st.integers(-coeff, coeff))
            if c:
                p = p + HomogPoly.monomial((i, n - i - k, k), c)
    return p


def test_parse_and_format():
    p = parse_poly("3/2*x^2 - x*y + 2*z^2")
    assert p.degree == 2
    assert p.coeff((2, 0, 0)) == Fraction(3, 2)
    assert p.coeff((1, 1, 0)) == -1
    assert format_poly(p) == "3/2*x^2 - x*y + 2*z^2"
    assert parse_poly("x**2*y") == parse_poly("x^2*y")
    assert parse_poly("y*x") == parse_poly("x*y")


@pytest.mark.parametrize("bad", ["x + y^2", "x +", "2x", "x^y", "", "x*w"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidInput):
        parse_poly(bad)


@settings(max_examples=200, deadline=None)
@given(forms())
def test_format_round_trip(p):
    assert parse_poly(format_poly(p), degree=p.degree) == p


@settings(max_examples=100, deadline=None)
@given(forms(), forms(), forms())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    if p.degree == q.degree:
        assert (p + q) * r == p * r + q * r
        assert to_sympy(p + q).expand() == (to_sympy(p) + to_sympy(q)).expand()
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@settings(max_examples=150, deadline=None)
@given(forms(max_degree=3), forms(max_degree=3), forms(max_degree=2))
def test_gcd_matches_sympy(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    p, q = a * c, b * c
    g = poly_gcd(p, q)
    expected = from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)), g.degree)
    assert g.degree == expected.degree
    # both are determined up to a scalar
    assert g.monic() == expected.monic()
    assert g.divides(p) and g.divides(q)


@settings(max_examples=100, deadline=None)
@given(forms(max_degree=3), forms(degree=2, coeff=3), forms(degree=2, coeff=3),
       forms(degree=2, coeff=3))
def test_substitute_matches_sympy(p, f, g, h):
    lhs = to_sympy(p.substitute([f, g, h]))
    rhs = to_sympy(p).subs({X: to_sympy(f), Y: to_sympy(g), Z: to_sympy(h)}, simultaneous=True)
    assert sympy.expand(lhs - rhs) == 0


def _sympy_multiplicity(p: HomogPoly, pt) -> int:
    # order of vanishing in an affine chart, by Taylor expansion
    a, b, c = pt
    e = to_sympy(p)
    u, v = sympy.symbols("u v")
    if c != 0:
        f = sympy.expand(e.subs({X: sympy.Rational(a, c) + u, Y: sympy.Rational(b, c) + v, Z: 1},
                                simultaneous=True))
    elif b != 0:
        f = sympy.expand(e.subs({X: sympy.Rational(a, b) + u, Y: 1, Z: v}, simultaneous=True))
    else:
        f = sympy.expand(e.subs({X: 1, Y: u, Z: v}, simultaneous=True))
    if f == 0:
        return p.degree
    return min(sum(m) for m in sympy.Poly(f, u, v).monoms())


@settings(max_examples=150, deadline=None)
@given(forms(max_degree=4),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).filter(any))
def test_multiplicity_matches_taylor(p, pt):
    if p.is_zero():
        return
    assert multiplicity_at(p, pt) == _sympy_multiplicity(p, pt)


def test_multiplicity_examples():
    q = parse_poly("y*z")
    assert multiplicity_at(q, (1, 0, 0)) == 2
    assert multiplicity_at(q, (0, 1, 0)) == 1
    assert multiplicity_at(q, (1, 1, 1)) == 0
    cusp = parse_poly("y^2*z - x^3")
    assert multiplicity_at(cusp, (0, 0, 1)) == 2
    assert multiplicity_at(cusp, (0, 0, 1), upper=1) == 1


def test_normalize_point():
    assert normalize_point((0, -2, 4)) == (0, 1, -2)
    assert normalize_point((Fraction(1, 2), 1, 0)) == (1, 2, 0)
    with pytest.raises(InvalidInput):
        normalize_point((0, 0, 0))


def test_primitive_and_divexact():
    p = parse_poly("6*x^2 - 4*x*y")
    assert p.primitive() == parse_poly("3*x^2 - 2*x*y")
    assert p.divexact(parse_poly("3*x - 2*y")) == parse_poly("2*x")
    assert not parse_poly("x + y").divides(parse_poly("x^2 + y^2"))
