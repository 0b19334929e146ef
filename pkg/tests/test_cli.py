import json
from fractions import Fraction as F

import pytest

from delpezzo.cli import run
from delpezzo.lattice import catalog, model_to_dict


def _json_run(argv):
    report, code = run(argv)
    assert report is not None, f"command failed: {argv}"
    return json.loads(report.to_json()), code


def test_beta_subcommand_p2():
    payload, code = _json_run(["beta", "--surface", "P2",
                               "--divisor-spec", "exceptional:pt"])
    assert code == 0
    row = payload["results"]["divisors"][0]
    assert (row["A"], row["S"], row["beta"]) == ("2", "2", "0")


def test_beta_strict_exit_code_on_destabilizer():
    _, code = run(["--strict", "beta", "--surface", "F1", "--divisor-spec", "E1"])
    assert code == 1
    _, code = run(["beta", "--surface", "F1", "--divisor-spec", "E1"])
    assert code == 0


def test_markov_subcommand():
    payload, code = _json_run(["markov", "--depth", "2"])
    assert payload["results"]["triples"] == ["(1,1,1)", "(1,1,2)", "(1,2,5)"]


def test_lct_subcommand():
    payload, _ = _json_run(["lct", "--poly", "y^2 - x^3"])
    assert payload["results"]["lct"] == "5/6"
    payload, _ = _json_run(["lct", "--lines", "4"])
    assert payload["results"]["lct"] == "1/2"


def test_intersect_and_zariski():
    payload, _ = _json_run(["intersect", "--surface", "dP7", "--d1=-K", "--d2=-K"])
    assert payload["results"]["value"] == "7"
    payload, code = _json_run(["zariski", "--surface", "dP7",
                               "--div", "-K - 2Ltilde"])
    assert code == 0
    assert payload["results"]["positive"] == "H"
    assert payload["results"]["negative"] == [
        {"curve": "E1", "coeff": "1"}, {"curve": "E2", "coeff": "1"}]


def test_zariski_not_pseff_verdict_and_strict():
    payload, code = _json_run(["zariski", "--surface", "F1", "--div", "3H - 4E1"])
    assert payload["results"]["verdict"] == "not-pseudoeffective"
    assert code == 0
    _, code = run(["--strict", "zariski", "--surface", "F1", "--div", "3H - 4E1"])
    assert code == 1


def test_volfn_subcommand():
    payload, _ = _json_run(["volfn", "--surface", "P2",
                            "--divisor-spec", "exceptional:pt"])
    assert payload["results"]["profile"] == [
        {"from": "0", "to": "3", "coeffs": ["9", "0", "-1"]}]
    assert payload["results"]["tau"] == "3"


def test_flag_subcommands():
    payload, code = _json_run(["delta-flag", "--surface", "dP3",
                               "--flag", "anticanonical-curve"])
    assert code == 0
    res = payload["results"]
    assert (res["S_E"], res["restricted_S"], res["delta_p_lower_bound"]) == \
        ("1/3", "1", "1")
    payload, code = _json_run(["semistable", "--surface", "P(1,1,2)+Q/2"])
    assert code == 0
    assert payload["results"]["bounds"] == {"generic": "1", "on-Q": "1", "vertex": "1"}
    _, code = run(["--strict", "semistable", "--surface", "F1"])
    assert code == 1


def test_discrep_classify_subcommands():
    payload, _ = _json_run(["discrep", "--graph", "rnc-cone:5"])
    assert payload["results"]["discrepancies"] == {"E": "-3/5"}
    payload, code = _json_run(["classify", "--graph", "cone-genus:2"])
    assert payload["results"]["class"] == "not-lc"
    _, code = run(["--strict", "classify", "--graph", "cone-genus:2"])
    assert code == 1


def test_graph_file_input(tmp_path):
    path = tmp_path / "graph.json"
    path.write_text(json.dumps({
        "vertices": [{"label": "E", "genus": 0, "self_int": -2}],
        "edges": [],
    }))
    payload, _ = _json_run(["discrep", "--graph", str(path)])
    assert payload["results"]["discrepancies"] == {"E": "0"}


def test_nvol_budget_localglobal():
    payload, _ = _json_run(["nvol", "--sing", "1/2(1,1)"])
    assert payload["results"]["nvol"] == "2"
    payload, _ = _json_run(["nvol", "--monomial", "1,2"])
    assert payload["results"]["nvol"] == "9/2"
    payload, _ = _json_run(["budget", "--degree", "3"])
    assert payload["results"]["admissible"] == ["smooth", "A1", "A2"]
    payload, code = _json_run(["local-global", "--surface", "P(1,1,2)"])
    assert payload["results"]["verdict"] == "fail"
    assert payload["results"]["margin"] == "7/2"
    _, code = run(["--strict", "local-global", "--surface", "P(1,1,2)"])
    assert code == 1
    payload, _ = _json_run(["local-global", "--vol", "3", "--sing", "A2"])
    assert payload["results"]["verdict"] == "pass"


def test_git_subcommands():
    payload, _ = _json_run(["git-weight", "--poly", "x^3+y^3+z^3+w^3",
                            "--one-ps", "3,-1,-1,-1"])
    assert payload["results"]["weight"] == "-3"
    payload, code = _json_run(["git-destab", "--poly", "x^3+y^3+z^3"])
    assert code == 0 and payload["results"]["verdict"] == "torus-unstable"
    _, code = run(["--strict", "git-destab", "--poly", "x^3+y^3+z^3"])
    assert code == 1
    payload, _ = _json_run(["git-destab", "--poly", "xyz - w^3"])
    assert payload["results"]["verdict"].startswith("torus-semistable")
    payload, _ = _json_run(["git-destab", "--verdict-table"])
    assert len(payload["results"]["table"]) == 3


def test_wps_vol():
    payload, _ = _json_run(["wps-vol", "--weights", "1,4,25"])
    assert payload["results"]["volume"] == "9"


def test_usage_errors_exit_2():
    assert run(["beta", "--surface", "nope", "--divisor-spec", "E1"])[1] == 2
    assert run(["lct", "--poly", "y^2 - x^"])[1] == 2
    assert run(["lct"])[1] == 2
    assert run(["frobnicate"])[1] == 2
    assert run(["wps-vol", "--weights", "2,4,6"])[1] == 2
    assert run(["nvol", "--sing", "1/4(2,1)"])[1] == 2


def test_catalog_list_and_show_round_trip():
    payload, _ = _json_run(["catalog", "list"])
    assert "dP7" in payload["results"]["surfaces"]
    payload, _ = _json_run(["catalog", "show", "dP7"])
    assert payload["results"] == model_to_dict(catalog("dP7"))


def test_external_catalog_override(tmp_path):
    model = model_to_dict(catalog("dP7"))
    model["name"] = "myquadric"
    path = tmp_path / "models.json"
    path.write_text(json.dumps({"models": [model]}))
    payload, code = _json_run(["--catalog", str(path), "catalog", "show", "myquadric"])
    assert code == 0 and payload["results"]["name"] == "myquadric"


def test_command_round_trip_reproduces_report():
    argv = ["beta", "--surface", "dP7", "--divisor-spec", "Ltilde"]
    first, _ = run(argv)
    again, _ = run(list(first.command))
    assert first.to_json() == again.to_json()


def test_json_and_table_render_same_scalars():
    report, _ = run(["beta", "--surface", "dP7", "--divisor-spec", "Ltilde"])
    payload = json.loads(report.to_json())
    table = report.to_table()
    row = payload["results"]["divisors"][0]
    for key in ("A", "S", "beta", "delta"):
        assert str(row[key]) in table


def test_reproduce_sections_only_contain_requested_rows():
    report, code = run(["reproduce-paper", "--section", "4"])
    payload = json.loads(report.to_json())
    rows = payload["results"]["rows"]
    assert rows and all(r["section"] == 4 for r in rows)
    assert code == 0


def test_reproduce_with_corrupted_catalog_fails_signature_row(tmp_path):
    model = model_to_dict(catalog("dP7"))
    model["gram"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"models": [model]}))
    report, code = run(["--catalog", str(path), "reproduce-paper", "--section", "1"])
    payload = json.loads(report.to_json())
    failing = [r for r in payload["results"]["rows"] if r["status"] == "FAIL"]
    assert any(r["id"] == "catalog:dP7" and "signature" in r["result"]
               for r in failing)
    _, code = run(["--strict", "--catalog", str(path),
                   "reproduce-paper", "--section", "1"])
    assert code == 1


def test_flag_file_loading(tmp_path):
    path = tmp_path / "flags.json"
    path.write_text(json.dumps({"flags": [{
        "name": "user-flag",
        "divisor_spec": "anticanonical-curve",
        "points": [{"label": "generic"}],
        "covers": ["generic"],
    }]}))
    payload, code = _json_run(["delta-flag", "--surface", "dP3",
                               "--flag", "user-flag", "--flag-file", str(path)])
    assert code == 0
    assert payload["results"]["delta_p_lower_bound"] == "1"
    payload, code = _json_run(["semistable", "--surface", "dP3",
                               "--flag-file", str(path)])
    assert code == 0
    assert any("plt" in note for note in payload["results"]["notes"])


def test_beta_accepts_raw_divisor_expression():
    payload, _ = _json_run(["beta", "--surface", "dP7",
                            "--divisor-spec", "H - E1 - E2"])
    row = payload["results"]["divisors"][0]
    assert row["kind"] == "raw" and row["beta"] == "-4/21"
    payload, _ = _json_run(["volfn", "--surface", "P2", "--divisor-spec", "H"])
    assert payload["results"]["tau"] == "3"


def test_reproduce_paper_api_wrapper():
    from delpezzo.cli import reproduce_paper
    report = reproduce_paper(section=5)
    payload = json.loads(report.to_json())
    assert payload["results"]["summary"]["failed"] == 0
    assert all(r["section"] == 5 for r in payload["results"]["rows"])
