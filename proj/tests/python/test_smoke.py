from fractions import Fraction

import pytest

import wheelcalc as wc


def test_tanh_coefficients():
    t = wc.series("tanh", 7)
    assert t[1] == 1
    assert t[3] == Fraction(-1, 3)
    assert t[5] == Fraction(2, 15)


def test_phi_equals_psi():
    for n in range(1, 8):
        assert wc.phi_number(n) == wc.psi_number(n)


def test_descent():
    assert wc.descent([4, 1, 2, 3, 5]) == 1


def test_roundtrip_and_chi_b():
    theta = "D[v:(0 1 2)(3 4 5);e:(0-3)(1-4)(2-5);l:]"
    v = wc.LinComb.diagram(theta, "B")
    assert len(v) == 1
    w = wc.apply_map("chiB", v)
    assert w.space == "A"
    assert w == v.retagged("A")


def test_lambda_of_figure_input():
    d = "D[v:(0 1 2)(3 4 5);e:(0-6)(1-8)(2-3)(4-9)(5-7);l:p1@6,p1@7,p1@8,p1@9]"
    v = wc.LinComb.diagram(d, "WhatF")
    assert wc.apply_map("lambda", v).space == "WhatWedge"


def test_relation_reduces_to_zero():
    text = """space A
1 D[v:(0 1 2)(3 4 5);e:(0-3)(1-4)(2-5)(6-7)(8-9);l:p1@6,p1@7,p1@8,p1@9]
-1 D[v:(0 1 2)(3 4 5);e:(0-3)(1-4)(2-5)(6-8)(7-9);l:p1@6,p1@7,p1@8,p1@9]
1 D[v:(0 1 2)(3 4 5)(6 7 8);e:(0-9)(1-10)(2-11)(3-6)(4-7)(5-8);l:p1@9,p1@10,p1@11]
"""
    assert wc.reduce(wc.LinComb.from_text(text)).is_zero()


def test_json_roundtrip():
    v = 3 * wc.LinComb.diagram("D[v:;e:(0-1);l:p1@0,p1@1]", "B")
    assert wc.LinComb.from_json(v.to_json()) == v
    assert v.terms()[0][1] == 3


def test_dimension_of_two_vertex_slice():
    assert len(wc.enumerate_slice("B", 2, ["p1", "p1"])) == 2
    assert wc.dim("B", 2, ["p1", "p1"]) == 2


def test_checks():
    assert "tanh" in wc.check_ids()
    r = wc.run_check("tanh", order=7)
    assert r["status"] == "pass"
    with pytest.raises(ValueError):
        wc.run_check("nope")


def test_parse_error():
    with pytest.raises(ValueError):
        wc.LinComb.diagram("D[v:1", "B")
