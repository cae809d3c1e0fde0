"""Smoke tests for the ramseykit python module."""

import json

import pytest

import ramseykit as rk


def cycle(n, colour, offset=0):
    return [(offset + i, offset + (i + 1) % n, [colour]) for i in range(n)]


def test_build_and_report():
    g = rk.build_graph(4, [(0, 1, ["red"]), (1, 2, ["blue", "green"])])
    assert g["n"] == 4
    assert g["edges"][1][2] == ["blue", "green"]

    rep = rk.completeness_report(g)
    assert rep["a_almost"] == 3

    with pytest.raises(rk.PreconditionError):
        rk.build_graph(2, [(0, 0, ["red"])])


def test_formulas():
    assert rk.ramsey_formula_A(6, 4, 5) == 13
    assert rk.ramsey_formula_C(4, 3, 3) == 13
    assert rk.floor_even("13/2") == 6
    assert rk.floor_odd("13/2") == 5
    assert rk.threshold_c("1", "1", "3") == "4"


def test_components_and_matchings():
    g = rk.build_graph(5, cycle(5, "green"))
    comps = rk.mono_components(g, "green")
    assert len(comps["components"]) == 1
    assert comps["components"][0]["odd"]
    assert len(comps["components"][0]["odd_cycle"]) == 5

    cert = rk.largest_odd_connected_matching(g, "green")
    assert len(cert["edges"]) == 2
    assert rk.verify_certificate(g, cert) == []

    # corrupt it
    cert_bad = dict(cert)
    cert_bad["edges"] = cert["edges"] + [[0, 2]]
    assert rk.verify_certificate(g, cert_bad) != []


def test_cycle_search():
    g = rk.build_graph(5, cycle(5, "red"))
    hit = rk.find_mono_cycle(g, "red", 5)
    assert hit["cycle"] is not None
    miss = rk.find_mono_cycle(g, "red", 4)
    assert miss["cycle"] is None and not miss["budget_exceeded"]


def test_structures_roundtrip():
    g = rk.build_K(2, 2, 3)
    cert = {
        "class": "K",
        "X1": [0, 1],
        "X2": [2, 3],
        "X3": [4, 5, 6],
        "x1": "2", "x2": "2", "x3": "3", "c": "0",
    }
    rep = rk.validate_structure(g, cert)
    assert rep["valid"]

    cert["x3"] = "4"
    assert not rk.validate_structure(g, cert)["valid"]


def test_construct_and_search():
    g = rk.construct_lower_bound("green-bipartite-rr", 6, 4, 5)
    assert g["n"] == 12

    rep = rk.ramsey_search([3, 3], 5)
    assert rep["verdict"] == "witness-found"
    rep6 = rk.ramsey_search([3, 3], 6)
    assert rep6["verdict"] == "all-colourings-hit"


def test_certifier_roundtrip():
    k = 120
    params = {"alpha1": "1/5", "alpha2": "1/5", "alpha3": "1",
              "eta": "8/120", "k": k}
    # embedded K-class witness, one vertex shy of each matching bound
    x1 = k // 10 - 1
    x3 = (12 * k // 10 - 4) - 2 * x1
    g = rk.build_K(x1, x1, x3)
    out = rk.certify_stability(g, params, slack="1" + "0" * 26)
    assert out["tag"] == "K"
    assert out["verified"]

    check = rk.verify_outcome(g, params, out)
    assert check["ok"]

    # JSON payloads stay serializable end to end
    json.dumps(out)
