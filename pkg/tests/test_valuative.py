from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from delpezzo.lattice import DivClass, catalog
from delpezzo.valuative import (A_value, DivisorSpecError, PlaneCurveGerm,
                                ResolutionGraph, S_value, beta, beta_report,
                                classify, delta_E, diagonal_parameter,
                                discrepancies, lct_n_lines, lct_newton,
                                named_graph, unstable_certificate)


def test_discrepancy_examples():
    assert discrepancies(named_graph("quadric-cone")) == [0]
    assert discrepancies(named_graph("elliptic-cone")) == [-1]
    for n in range(1, 7):
        assert discrepancies(named_graph(f"rnc-cone:{n}")) == [F(2 - n, n)]


def test_discrepancies_satisfy_adjunction_system():
    for spec in ("quadric-cone", "elliptic-cone", "rnc-cone:4", "An:5",
                 "rnc-cone:3+ruling", "cone-genus:2"):
        g = named_graph(spec)
        a = discrepancies(g)
        mat = g.intersection_matrix()
        for j, v in enumerate(g.vertices):
            lhs = sum(a[i] * mat[i][j] for i in range(len(a)))
            rhs = F(2 * v.genus - 2 - v.self_int)
            for stt in g.strict_transforms:
                for i, mult in stt.incidences:
                    if i == j:
                        rhs += stt.coeff * mult
            assert lhs == rhs, spec


def test_discrepancies_reject_indefinite_matrix():
    g = ResolutionGraph.from_dict({
        "vertices": [{"label": "A", "genus": 0, "self_int": -1},
                     {"label": "B", "genus": 0, "self_int": -1}],
        "edges": [[0, 1, 2]],
    })
    with pytest.raises(ValueError):
        discrepancies(g)


def test_classification_corpus():
    assert classify(named_graph("quadric-cone")).kind == "canonical"
    assert classify(named_graph("elliptic-cone")).kind == "lc"
    assert classify(named_graph("elliptic-cone")).min_discrepancy == -1
    got = classify(named_graph("cone-genus:2"))
    assert got.kind == "not-lc" and got.min_discrepancy == -3
    for n in range(1, 6):
        assert classify(named_graph(f"An:{n}")).kind == "canonical"
    assert classify(named_graph("rnc-cone:3")).kind == "klt"
    # cone with its ruling at full coefficient: plt but not klt
    assert classify(named_graph("rnc-cone:2+ruling")).kind == "plt-boundary"


def test_lct_corpus():
    germ = PlaneCurveGerm.from_terms
    assert lct_newton(germ({(0, 2): 1, (3, 0): -1})) == F(5, 6)
    assert lct_newton(germ({(1, 1): 1})) == 1
    assert lct_newton(germ({(0, 2): 1, (4, 0): -1})) == F(3, 4)
    for n in range(3, 9):
        assert lct_newton(germ({(0, 2): 1, (n, 0): -1})) == min(F(1), F(n + 2, 2 * n))
    assert [lct_n_lines(n) for n in range(1, 7)] == \
        [1, 1, F(2, 3), F(1, 2), F(2, 5), F(1, 3)]


def test_lct_brute_force_weight_oracle():
    # lct = min over positive weights of |w|_1 / mult_w, capped at 1
    def oracle(support):
        best = F(1)
        for w1 in range(1, 11):
            for w2 in range(1, 11):
                mult = min(w1 * i + w2 * j for i, j in support)
                best = min(best, F(w1 + w2, mult))
        return best

    cases = [
        {(0, 2): 1, (3, 0): 1},
        {(1, 1): 1},
        {(0, 2): 1, (4, 0): 1},
        {(2, 0): 1, (0, 2): 1},
        {(5, 0): 1, (0, 5): 1},
        {(3, 0): 1, (1, 2): 1},
        {(6, 0): 1, (2, 2): 1, (0, 6): 1},
    ]
    for terms in cases:
        germ = PlaneCurveGerm.from_terms(terms)
        assert lct_newton(germ) == oracle(germ.support)


def test_lct_invariances():
    germ = PlaneCurveGerm.from_terms({(0, 2): F(7, 3), (3, 0): -5})
    assert lct_newton(germ) == F(5, 6)  # coefficient scaling is irrelevant
    # exponent dilation scales the diagonal parameter linearly
    for k in (2, 3):
        dil = PlaneCurveGerm.from_terms({(k * i, k * j): 1 for (i, j) in germ.support})
        assert diagonal_parameter(dil) == k * diagonal_parameter(germ)


def test_germ_validation():
    with pytest.raises(ValueError):
        PlaneCurveGerm.from_terms({})
    with pytest.raises(ValueError):
        PlaneCurveGerm.from_terms({(0, 0): 1, (1, 0): 1})


@given(st.sets(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=6)
       .filter(lambda s: (0, 0) not in s))
def test_lct_at_most_one(support):
    germ = PlaneCurveGerm.from_terms({k: F(1) for k in support})
    value = lct_newton(germ)
    assert 0 < value <= 1


def test_A_values():
    assert A_value(catalog("P2"), "exceptional:pt") == 2
    for c in (F(0), F(1, 4), F(1, 2)):
        pair = catalog(f"P(1,1,2)+{c}Q" if c else "P(1,1,2)+0Q")
        assert A_value(pair, "Q") == 1 - c
        assert A_value(pair, "exceptional") == 1
    for n in range(2, 7):
        assert A_value(catalog(f"P(1,1,{n})"), "exceptional") == F(2, n)


def test_S_values():
    assert S_value(catalog("P2"), "exceptional:pt") == 2
    assert S_value(catalog("dP3"), "anticanonical-curve") == F(1, 3)
    for c in (F(0), F(1, 2), F(3, 4)):
        pair = catalog(f"P(1,1,2)+{c}Q" if c else "P(1,1,2)+0Q")
        assert S_value(pair, "exceptional") == F(2, 3) * (2 - c)


def test_beta_examples():
    assert beta(catalog("P2"), "exceptional:pt") == 0
    assert beta(catalog("F1"), "E1") == F(-1, 6)
    rep = beta_report(catalog("F1"), "E1")
    assert rep["S"] == F(7, 6) and rep["delta"] == F(6, 7)
    for c in (F(0), F(1, 4), F(1, 2), F(3, 4)):
        pair = catalog(f"P(1,1,2)+{c}Q" if c else "P(1,1,2)+0Q")
        assert beta(pair, "Q") == (1 - 2 * c) / 3
        assert beta(pair, "exceptional") == (2 * c - 1) / 3
    assert delta_E(catalog("P2"), "exceptional:pt") == 1


def test_beta_model_independence():
    # same pair presented on the cone and on its resolution
    pair = catalog("P(1,1,2)+1/2Q")
    f2pair = catalog("F2~P(1,1,2)+1/2Q")
    assert S_value(pair, "Q") == S_value(f2pair, "Q") == F(1, 2)
    # the ruling pulls back to f + e/2 on the resolution side
    ruling_up = DivClass.of([F(1, 2), 1])
    assert S_value(pair, "ruling") == S_value(f2pair, ruling_up) == 1


def test_unstable_certificates():
    dp7 = catalog("dP7")
    assert unstable_certificate(dp7, dp7.beta_candidates) == ("L12", F(-4, 21))
    assert unstable_certificate(dp7, ["E1", "L12"]) == ("E1", F(-2, 21))
    assert unstable_certificate(catalog("P2"), ["exceptional:pt", "line"]) is None
    got = unstable_certificate(catalog("P(1,1,2)"), ["exceptional"])
    assert got == ("exceptional", F(-1, 3))


def test_unknown_divisor_spec():
    with pytest.raises(DivisorSpecError):
        beta(catalog("P2"), "nonsense")
    with pytest.raises(DivisorSpecError):
        beta(catalog("P2"), "exceptional")   # no resolution link on a smooth plane


def test_terminal_classification_reachable():
    # contracting a (-1)-curve to a smooth point: a = 1, capped minimum 1
    got = classify(named_graph("rnc-cone:1"))
    assert got.kind == "terminal" and got.min_discrepancy == 1


def test_closed_form_integral_oracles_for_destabilizers():
    # independent antiderivative route for the headline S-values
    from delpezzo.exactnum import Poly
    s_f1 = Poly([8, -2, -1]).integrate(0, 2) / 8          # 9 - (1+t)^2 over [0,2]
    assert s_f1 == F(7, 6) == S_value(catalog("F1"), "E1")
    two_chamber = Poly([7, -2, -1]).integrate(0, 1) + Poly([9, -6, 1]).integrate(1, 3)
    assert two_chamber / 7 == F(25, 21) == S_value(catalog("dP7"), "Ltilde")


def test_diagonal_parameter_fuzz_against_weight_grid():
    # with exponents <= 8, every polygon edge normal has entries <= 8, so a
    # 0..16 weight grid evaluates the defining maximum exactly
    import random
    rng = random.Random(31337)
    for _ in range(500):
        k = rng.randint(1, 6)
        support = set()
        while len(support) < k:
            pt = (rng.randint(0, 8), rng.randint(0, 8))
            if pt != (0, 0):
                support.add(pt)
        germ = PlaneCurveGerm.from_terms({p: F(1) for p in support})
        best = F(0)
        for w1 in range(17):
            for w2 in range(17):
                if w1 == w2 == 0:
                    continue
                mult = min(w1 * i + w2 * j for i, j in support)
                best = max(best, F(mult, w1 + w2))
        assert diagonal_parameter(germ) == best, sorted(support)
