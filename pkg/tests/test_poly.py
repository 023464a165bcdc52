import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from asymih.gaussrat import GaussRat, I, ONE
from asymih.parse import ParseError, parse_arc_literal, parse_map, parse_poly
from asymih.poly import NEG_INF, LojBound, Poly, PolyMap, jacobian_det, lojasiewicz_bound

from oracles import sympy_poly

VARS = ("x", "y")


def P(text, vars=VARS):
    return parse_poly(text, vars)


# -- Gaussian rationals ------------------------------------------------------------

def test_gaussrat_canonical_and_printing():
    z = GaussRat(Fraction(2, 4), Fraction(-3, 6))
    assert z.re == Fraction(1, 2) and z.im == Fraction(-1, 2)
    assert str(GaussRat(1, 2)) == "1+2*i"
    assert str(I) == "i" and str(-I) == "-i"
    assert (I * I) == GaussRat(-1)
    assert GaussRat(3, 4).norm() == 25
    assert GaussRat(3, -4).magnitude_bound() == 7
    assert GaussRat.from_json(GaussRat(Fraction(1, 3), 2).to_json()) == GaussRat(Fraction(1, 3), 2)


def test_gaussrat_division_exact():
    a, b = GaussRat(1, 2), GaussRat(3, -1)
    assert (a / b) * b == a
    with pytest.raises(ZeroDivisionError):
        a / GaussRat(0)


# -- parsing -------------------------------------------------------------------------

def test_parse_simple_terms():
    p = P("x*y - 1")
    assert p.terms == {(1, 1): ONE, (0, 0): GaussRat(-1)}


def test_parse_gaussian_square():
    assert P("(x+i*y)^2") == P("x^2 + 2*i*x*y - y^2")


def test_parse_zero():
    z = P("0")
    assert z.is_zero()
    assert z.degree() is NEG_INF


@pytest.mark.parametrize("text", ["x +", "x ** 2", "2/0", "x^-1", "(x", "x y"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as exc:
        P(text)
    assert exc.value.pos >= 0


def test_parse_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        P("x + z")


def test_parse_map_and_arc():
    F = parse_map("F=(x, x*y)")
    assert F.n == 2 and str(F) == "F=(x, x*y)"
    coeffs, exps = parse_arc_literal("(1) t^1, (-3/2*i) t^-2")
    assert exps == (1, -2)
    assert coeffs == (ONE, GaussRat(0, Fraction(-3, 2)))


CORPUS = ["x*y - 1", "(x+i*y)^2", "x^3 - 3/4*x*y + 2", "(1+i)*x^2*y - i*y^3 + 7",
          "x + y^2 + 2*x^2*y + x^4", "(x - y)^3*(x + 2*y)", "-x^5 + i", "3*x^2*y"]


@pytest.mark.parametrize("text", CORPUS)
def test_parse_matches_sympy_expansion(text):
    ours = P(text)
    ref = sympy.Poly(sympy_poly(text), *sympy.symbols("x y"))
    assert len(ours.terms) == len(ref.terms())
    for monom, c in ref.terms():
        re, im = c.as_real_imag()
        assert ours.terms[monom] == GaussRat(Fraction(str(re)), Fraction(str(im)))


@pytest.mark.parametrize("text", CORPUS)
def test_print_round_trip(text):
    p = P(text)
    assert P(str(p)) == p


# -- ring properties -----------------------------------------------------------------

small_rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)
coeff = st.builds(GaussRat, small_rat, small_rat)
monomial = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monomial, coeff, max_size=5).map(lambda d: Poly(VARS, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_degree_and_initial_form_multiply(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert (f * g).degree() == f.degree() + g.degree()
    assert (f * g).initial_form() == f.initial_form() * g.initial_form()


@settings(max_examples=40, deadline=None)
@given(polys)
def test_print_parse_round_trip_random(f):
    assert P(str(f)) == f


def test_initial_form_examples():
    assert P("x + x*y").initial_form() == P("x*y")
    assert P("x^2 - y^2 + x").initial_form() == P("x^2 - y^2")
    h = P("x^2 - 3*x*y")
    assert h.initial_form() == h
    with pytest.raises(ValueError):
        P("0").initial_form()


def test_exact_division():
    f, g = P("x^2 - y^2"), P("x - y")
    assert f.div_exact(g) == P("x + y")
    with pytest.raises(ArithmeticError):
        P("x^2 + 1").div_exact(g)


# -- Jacobian ------------------------------------------------------------------------

@pytest.mark.parametrize("map_text, det", [
    ("F=(x, y)", "1"),
    ("F=(x, x*y)", "x"),
    ("F=(x + y^2, y)", "1"),
    ("F=(x^2, y)", "2*x"),
])
def test_jacobian_examples(map_text, det):
    assert jacobian_det(parse_map(map_text)) == P(det)


def test_jacobian_dimension_mismatch():
    with pytest.raises(ValueError):
        jacobian_det(PolyMap([P("x*y")], VARS))


# -- Lojasiewicz bound ---------------------------------------------------------------

def test_lojasiewicz_examples():
    assert lojasiewicz_bound(P("x")) == LojBound(Fraction(2), 1)
    assert lojasiewicz_bound(P("3*x^2*y")) == LojBound(Fraction(12), 2)
    assert lojasiewicz_bound(P("0")) == LojBound(Fraction(0), 0)


def test_lojasiewicz_rejects_negative_constant():
    with pytest.raises(ValueError):
        LojBound(Fraction(-1), 0)


def random_points(n, seed, imaginary):
    rng = random.Random(seed)

    def q():
        return Fraction(rng.randint(-10 ** 4, 10 ** 4), rng.randint(1, 100))
    return [tuple(GaussRat(q(), q() if imaginary else 0) for _ in range(2)) for _ in range(n)]


@pytest.mark.parametrize("imaginary", [False, True])
@pytest.mark.parametrize("text", CORPUS)
def test_lojasiewicz_holds_on_random_points(text, imaginary):
    f = P(text)
    b = lojasiewicz_bound(f)
    assert all(b.holds_at(f, pt) for pt in random_points(200, text, imaginary))


def test_lojasiewicz_diagonal_point_needs_the_factor():
    # near the angle pi/8, |z^2|_1 is about sqrt(2)|z|^2, beyond the plain
    # coefficient sum
    f = P("x^2")
    z = GaussRat(1000, 414)
    naive = LojBound(Fraction(1), 1)
    assert not naive.holds_at(f, (z, GaussRat(0)))
    assert lojasiewicz_bound(f).holds_at(f, (z, GaussRat(0)))
