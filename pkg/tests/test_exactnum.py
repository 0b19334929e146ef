import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from delpezzo.exactnum import (DomainError, PiecewisePoly, Poly, piecewise_integrate,
                               poly_eval, poly_integrate, rat, rat_str, rational_roots)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
polys = st.lists(rationals, min_size=0, max_size=5).map(Poly)


def test_rat_parsing_and_rendering():
    assert rat("25/3") == F(25, 3)
    assert rat(7) == 7
    assert rat_str(F(25, 3)) == "25/3"
    assert rat_str(F(-8, 2)) == "-4"


def test_integrate_headline_values():
    assert poly_integrate(Poly([9, 0, -1]), 0, 3) == 18
    assert poly_integrate(Poly([]), F(-5, 2), 7) == 0
    assert poly_integrate(Poly([3, -6, 3]), 0, 1) == 1  # 3(1-t)^2


def test_integrate_reversed_bounds_is_domain_error():
    with pytest.raises(DomainError):
        poly_integrate(Poly([1]), 1, 0)


def test_eval_examples():
    p = Poly([9, 0, -1])
    assert poly_eval(p, 3) == 0
    assert poly_eval(p, 0) == 9
    assert poly_eval(Poly([F(9, 2), 0, -2]), 0) == F(9, 2)  # 2(9/4 - u^2)


def test_zero_poly_degree_sentinel():
    assert Poly([]).degree == -1
    assert Poly([0, 0]).degree == -1
    assert Poly([0, 1]).degree == 1


def test_trailing_zeros_stripped():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)


def test_piecewise_headline_values():
    p2 = PiecewisePoly([0, 3], [Poly([9, 0, -1])])
    assert piecewise_integrate(p2, 0, 3) == 18
    const = PiecewisePoly([0, 2], [Poly([1])])
    assert piecewise_integrate(const, 0, 2) == 2
    dp7 = PiecewisePoly([0, 1, 3], [Poly([7, -2, -1]), Poly([9, -6, 1])])
    assert piecewise_integrate(dp7, 0, 3) == F(25, 3)


def test_piecewise_domain_errors():
    pp = PiecewisePoly([0, 1], [Poly([1])])
    with pytest.raises(DomainError):
        piecewise_integrate(pp, 0, 2)
    with pytest.raises(DomainError):
        pp(F(3, 2))


def test_piecewise_continuity_enforced():
    with pytest.raises(ValueError):
        PiecewisePoly([0, 1, 2], [Poly([0]), Poly([1])])
    with pytest.raises(ValueError):
        PiecewisePoly([0, 0, 1], [Poly([0]), Poly([0])])


def test_piecewise_report_form():
    pp = PiecewisePoly([0, F(3, 2)], [Poly([F(9, 2), 0, -2])])
    assert pp.to_report() == [{"from": "0", "to": "3/2", "coeffs": ["9/2", "0", "-2"]}]


@given(polys, polys, rationals, rationals)
def test_integration_is_additive_in_the_integrand(p, q, a, b):
    a, b = min(a, b), max(a, b)
    assert poly_integrate(p + q, a, b) == poly_integrate(p, a, b) + poly_integrate(q, a, b)


@given(polys, rationals, rationals, rationals)
def test_integration_splits_at_midpoints(p, a, b, c):
    a, b, c = sorted((a, b, c))
    assert poly_integrate(p, a, c) == poly_integrate(p, a, b) + poly_integrate(p, b, c)


@given(polys, rationals, rationals, rationals)
def test_integration_is_homogeneous(p, lam, a, b):
    a, b = min(a, b), max(a, b)
    assert poly_integrate(p * lam, a, b) == lam * poly_integrate(p, a, b)


def _random_piecewise(rng):
    k = rng.randint(1, 4)
    bps = sorted(rng.sample(range(-9, 10), k + 1))
    pieces, prev = [], None
    for j in range(k):
        c2 = F(rng.randint(-5, 5))
        c1 = F(rng.randint(-7, 7), rng.randint(1, 3))
        t = F(bps[j])
        c0 = F(rng.randint(-9, 9)) if prev is None else prev(t) - c1 * t - c2 * t * t
        p = Poly([c0, c1, c2])
        pieces.append(p)
        prev = p
    return PiecewisePoly(bps, pieces)


def test_second_route_sympy_on_50_random_piecewise_quadratics():
    t = sympy.Symbol("t")
    rng = random.Random(1729)
    for _ in range(50):
        pp = _random_piecewise(rng)
        lo, hi = pp.domain
        expected = sympy.Integer(0)
        for i, piece in enumerate(pp.pieces):
            expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** k
                       for k, c in enumerate(piece.coeffs))
            expected += sympy.integrate(
                expr, (t, sympy.Rational(pp.breakpoints[i]),
                       sympy.Rational(pp.breakpoints[i + 1])))
        got = pp.integrate(lo, hi)
        assert sympy.Rational(got.numerator, got.denominator) == expected


def test_rational_roots_quadratic():
    assert rational_roots(Poly([9, 0, -1])) == [-3, 3]
    assert rational_roots(Poly([12, -4])) == [3]
    assert rational_roots(Poly([2, 0, -1])) == []  # irrational pair
    assert rational_roots(Poly([1])) == []
