import json
from fractions import Fraction as F

import pytest

from delpezzo.lattice import catalog
from delpezzo.parse import ParseError, parse_div_expr, parse_poly, poly_terms
from delpezzo.report import Report


def test_parse_poly_germs_and_forms():
    assert poly_terms("y^2 - x^3", ("x", "y")) == {(0, 2): 1, (3, 0): -1}
    fermat = poly_terms("x^3+y^3+z^3+w^3")
    assert fermat == {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1,
                      (0, 0, 3, 0): 1, (0, 0, 0, 3): 1}
    assert poly_terms("xyz - w^3") == {(1, 1, 1, 0): 1, (0, 0, 0, 3): -1}
    assert poly_terms("(x + y)^2", ("x", "y")) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert poly_terms("1/2 x y", ("x", "y")) == {(1, 1): F(1, 2)}
    assert poly_terms("-x + x", ("x", "y")) == {}
    assert poly_terms("2(x - y)x", ("x", "y")) == {(2, 0): 2, (1, 1): -2}


def test_parse_poly_errors_are_positioned():
    with pytest.raises(ParseError) as err:
        parse_poly("y^2 - x^")
    assert "column 9" in str(err.value)
    with pytest.raises(ParseError):
        parse_poly("y^2 - x^y")
    with pytest.raises(ParseError):
        parse_poly("x/y")          # division only in rational literals
    with pytest.raises(ParseError):
        parse_poly("x + ")
    with pytest.raises(ParseError):
        parse_poly("x ? y")
    with pytest.raises(ParseError):
        poly_terms("a + b", ("x", "y"))


def test_parse_div_expr():
    terms = parse_div_expr("3H - E1 - 1/2 Q", lambda label: None)
    assert terms == [(3, "H"), (-1, "E1"), (F(-1, 2), "Q")]
    assert parse_div_expr("-K", lambda label: None) == [(-1, "K")]
    assert parse_div_expr("2*H + E2", lambda label: None) == [(2, "H"), (1, "E2")]
    with pytest.raises(ParseError):
        parse_div_expr("H E1", lambda label: None)   # missing sign
    with pytest.raises(ParseError):
        parse_div_expr("", lambda label: None)
    with pytest.raises(ParseError):
        parse_div_expr("3 +", lambda label: None)


def test_report_json_and_table_render_same_values():
    rep = Report(command=["beta", "--surface", "P2"],
                 inputs={"surface": "dP9"},
                 results={"beta": F(25, 3), "flags": [{"a": F(1, 2), "b": "x"}],
                          "nested": {"tau": F(3, 2)}},
                 provenance=["dP9"])
    payload = json.loads(rep.to_json())
    table = rep.to_table()

    def leaves(node):
        if isinstance(node, dict):
            for v in node.values():
                yield from leaves(v)
        elif isinstance(node, list):
            for v in node:
                yield from leaves(v)
        else:
            yield node

    for leaf in leaves(payload["results"]):
        assert str(leaf) in table
    assert payload["results"]["beta"] == "25/3"


def test_report_decimal_mode_is_marked():
    rep = Report(command=["x"], inputs={}, results={"value": F(1, 3)})
    payload = json.loads(rep.to_json(decimal=True))
    entry = payload["results"]["value"]
    assert entry["exact"] == "1/3"
    assert entry["approx_note"] == "non-authoritative"
    assert abs(entry["approx"] - 1 / 3) < 1e-12


def test_report_deterministic():
    rep = Report(command=["markov"], inputs={"depth": 2},
                 results={"triples": ["(1,1,1)", "(1,1,2)"]})
    assert rep.to_json() == rep.to_json()
    assert rep.to_table() == rep.to_table()
