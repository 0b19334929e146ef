import random
from fractions import Fraction as F

import pytest

from delpezzo.linalg import (SingularMatrixError, char_poly, det, inverse,
                             is_negative_definite, mat, solve, symmetric_signature)
from delpezzo.lp import eq_feasibility, in_cone


def test_solve_and_det():
    m = [[F(2), F(1)], [F(1), F(3)]]
    x = solve(m, [F(5), F(10)])
    assert x == [F(1), F(3)]
    assert det(m) == 5
    with pytest.raises(SingularMatrixError):
        solve([[F(1), F(2)], [F(2), F(4)]], [F(0), F(0)])


def test_inverse():
    m = mat([[2, 1], [1, 3]])
    inv = inverse(m)
    assert inv == ((F(3, 5), F(-1, 5)), (F(-1, 5), F(2, 5)))


def test_negative_definite():
    assert is_negative_definite([[F(-2), F(1)], [F(1), F(-2)]])
    assert not is_negative_definite([[F(0)]])
    assert not is_negative_definite([[F(-1), F(2)], [F(2), F(-1)]])
    assert is_negative_definite([])  # empty support


def test_char_poly_and_signature():
    m = mat([[2, 0], [0, 3]])
    p = char_poly(m)
    assert p(2) == 0 and p(3) == 0 and p(5) == 6
    assert symmetric_signature(mat([[1, 0, 0], [0, -1, 0], [0, 0, -1]])) == (1, 2, 0)
    assert symmetric_signature(mat([[F(1, 2)]])) == (1, 0, 0)
    assert symmetric_signature(mat([[0, 1], [1, 0]])) == (1, 1, 0)
    assert symmetric_signature(mat([[1, 1], [1, 1]])) == (1, 0, 1)


def _check_farkas(a, b, res):
    y = res.farkas
    assert y is not None
    ncols = len(a[0])
    for j in range(ncols):
        assert sum(y[i] * a[i][j] for i in range(len(a))) <= 0
    assert sum(yi * bi for yi, bi in zip(y, b)) > 0


def test_feasible_solution_is_exact():
    a = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    b = [F(3), F(2)]
    res = eq_feasibility(a, b)
    assert res.feasible
    x = res.x
    for i in range(2):
        assert sum(a[i][j] * x[j] for j in range(3)) == b[i]
    assert all(v >= 0 for v in x)


def test_infeasible_has_farkas_certificate():
    a = [[F(1), F(1)]]
    b = [F(-1)]
    res = eq_feasibility(a, b)
    assert not res.feasible
    _check_farkas(a, b, res)


def test_random_lps_solution_or_certificate():
    rng = random.Random(42)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 6)
        a = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
        b = [F(rng.randint(-4, 4)) for _ in range(m)]
        res = eq_feasibility(a, b)
        if res.feasible:
            for i in range(m):
                assert sum(a[i][j] * res.x[j] for j in range(n)) == b[i]
            assert all(v >= 0 for v in res.x)
        else:
            _check_farkas(a, b, res)


def test_cone_membership():
    gens = [[F(0), F(1)], [F(1), F(-1)]]
    inside = in_cone(gens, [F(3), F(-2)])
    assert inside.feasible and inside.x == (1, 3)
    outside = in_cone(gens, [F(3), F(-7, 2)])
    assert not outside.feasible
    y = outside.farkas
    for g in gens:
        assert sum(a * b for a, b in zip(y, g)) <= 0
    assert y[0] * 3 + y[1] * F(-7, 2) > 0


def test_empty_cone():
    assert in_cone([], [F(0), F(0)]).feasible
    assert not in_cone([], [F(1), F(0)]).feasible
