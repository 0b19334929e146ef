import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from delpezzo.catalog import builtin_model_dicts, canonical_name
from delpezzo.lattice import (DivClass, ModelInvariantError, SurfaceModel,
                              UnknownSurfaceError, catalog, catalog_names,
                              enumerate_neg_curves, intersect, is_nef,
                              load_models, model_from_dict, model_to_dict)

DATA = Path(__file__).resolve().parents[1] / "src" / "delpezzo" / "data" / "models.json"


def test_neg_curve_counts():
    want = {0: 0, 1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
    for k, n in want.items():
        assert len(enumerate_neg_curves(k)) == n


def test_neg_curves_stable_under_larger_bound():
    for k in range(1, 9):
        std = {c.coeffs for c in enumerate_neg_curves(k)}
        big = {c.coeffs for c in enumerate_neg_curves(k, c0_bound=8)}
        assert std == big


def test_neg_curves_k2_explicit():
    got = [c.coeffs for c in enumerate_neg_curves(2)]
    assert got == [(0, 1, 0), (0, 0, 1), (1, -1, -1)]


def test_enumerate_out_of_range():
    with pytest.raises(ValueError):
        enumerate_neg_curves(9)


def test_intersect_examples():
    p2 = catalog("P2")
    h = p2.div([1])
    assert intersect(p2, h, h) == 1
    assert intersect(p2, p2.minus_k(), p2.minus_k()) == 9
    dp7 = catalog("dP7")
    assert intersect(dp7, dp7.minus_k(), dp7.minus_k()) == 7


def test_intersect_rank_mismatch():
    p2 = catalog("P2")
    with pytest.raises(ValueError):
        intersect(p2, DivClass.of([1, 0]), DivClass.of([1]))


def test_is_nef_examples():
    f1 = catalog("F1")
    assert is_nef(f1, DivClass.of([3, -2]))        # t = 2
    assert not is_nef(f1, DivClass.of([3, F(-7, 2)]))
    assert is_nef(f1, DivClass.of([0, 0]))
    dp7 = catalog("dP7")
    assert not is_nef(dp7, DivClass.of([1, 1, 1]))  # -K - 2*Ltilde pairs -1 with E1


def test_catalog_degrees():
    for d in range(1, 10):
        m = catalog(f"dP{d}")
        assert intersect(m, m.minus_k(), m.minus_k()) == d
        for c in m.neg_curves:
            sq = m.intersect(c.cls, c.cls)
            if sq == -1:
                assert m.intersect(m.minus_k(), c.cls) == 1
    q = catalog("P1xP1")
    assert intersect(q, q.minus_k(), q.minus_k()) == 8


def test_catalog_wps_entries():
    p112 = catalog("P(1,1,2)")
    assert p112.rank == 1 and p112.gram == ((F(1, 2),),)
    assert p112.canonical == DivClass.of([-4])
    assert intersect(p112, p112.minus_k(), p112.minus_k()) == 8
    f2 = catalog("F2~P(1,1,2)")
    assert f2.basis_labels == ("e", "f")
    assert f2.intersect(f2.curve("e"), f2.curve("e")) == -2
    assert f2.intersect(f2.curve("f"), f2.curve("f")) == 0
    assert f2.intersect(f2.curve("e"), f2.curve("f")) == 1


def test_catalog_aliases():
    assert catalog("P2").name == "dP9"
    assert catalog("F1").name == "dP8"
    assert catalog("cubic").name == "dP3"
    assert canonical_name("P(1,1,2)+Q/2") == "P(1,1,2)+1/2Q"
    assert catalog("P(1,1,2)+Q/2").boundary[0].coeff == F(1, 2)


def test_catalog_signature_validated_everywhere():
    for name in catalog_names():
        assert catalog(name).validate() == []


def test_catalog_unknown():
    with pytest.raises(UnknownSurfaceError):
        catalog("dP10")
    with pytest.raises(UnknownSurfaceError):
        catalog("P(2,4,5)")   # not well-formed


def test_parametrized_wps():
    m = catalog("P(1,4,25)")
    assert intersect(m, m.minus_k(), m.minus_k()) == 9
    tags = sorted(s.sing.display for s in m.sings)
    assert tags == ["1/25(1,4)", "1/4(1,1)"]


def test_pair_models_track_coefficient():
    for c in ("0", "1/4", "1/2", "3/4"):
        m = catalog(f"P(1,1,2)+{c}Q")
        assert m.boundary[0].coeff == F(c)
        pol = m.polarization()
        assert intersect(m, pol, pol) == 2 * (2 - F(c)) ** 2
    with pytest.raises(UnknownSurfaceError):
        catalog("P(1,1,2)+5/4Q")


def test_shipped_data_file_matches_builders():
    shipped = json.loads(DATA.read_text())
    assert shipped == {"models": builtin_model_dicts()}


def test_model_round_trip_through_dict():
    for name in ("dP7", "P(1,1,2)", "F2~P(1,1,2)"):
        m = catalog(name)
        again = model_from_dict(model_to_dict(m))
        assert model_to_dict(again) == model_to_dict(m)


def test_load_models_external_file(tmp_path):
    m = catalog("dP7")
    path = tmp_path / "one.json"
    path.write_text(json.dumps(model_to_dict(m)))
    loaded = load_models(path)
    assert len(loaded) == 1 and loaded[0].name == "dP7"


def test_invalid_gram_rejected():
    data = model_to_dict(catalog("dP7"))
    data["gram"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]
    with pytest.raises(ModelInvariantError):
        model_from_dict(data)
    m = model_from_dict(data, validate=False)
    assert any("signature" in p for p in m.validate())
