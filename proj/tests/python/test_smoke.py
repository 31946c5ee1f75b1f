import pytest

import bcn


def test_orders():
    assert bcn.group_order("S4") == 24
    assert bcn.group_order("(1,2,3),(1,2)") == 6


def test_bc_values():
    assert bcn.bc("S3", 2)["primary_display"] == "Z/2"
    assert bcn.bc("C3", 2)["primary_display"] == "Z"
    r = bcn.bc("S5", 2)
    assert r["primary_display"] == "(Z/2)^6 x Z/4"
    assert r["free_rank"] == 0
    assert bcn.bc("C2", 2)["primary_display"] == "0"


def test_decomposition():
    d = bcn.bc_prime("A5", 2)
    assert d["primary_display"] == "(Z/2)^3"
    assert sorted(s["primary_display"] for s in d["summands"] if s["primary_display"] != "0") == ["(Z/2)^2", "Z/2"]


def test_verify():
    r = bcn.verify("D6", 2)
    assert r["iso"] and r["inverse_formal"]
    assert not bcn.verify("He3", 2, corrupt_psi=True)["psi_relations_mapped"]


def test_cd():
    assert bcn.cd("C2")["cd"] == 1
    assert bcn.cd("A5")["cd"] == 2


def test_d6_class():
    c = bcn.d6_class()
    assert bcn.class_order("D6", 2, c["class"]) == 2
    assert bcn.class_order("D6", 2, []) == 1


def test_restrict():
    term = [{"coeff": 1, "H": ["(1,2,3)"], "Y": ["(1,2,3)"], "beta": [[1], [1]]}]
    r = bcn.restrict("S3", ["(1,2,3)"], 2, term)
    assert r["order"] == "1"


def test_basis_and_pairs():
    b = bcn.basis("D6", ["(1,2,3,4,5,6)"])
    assert b["invariant_factors"] == [6]
    assert len(bcn.pair_classes("S3")) == 2


def test_errors():
    with pytest.raises(ValueError):
        bcn.bc("D1", 2)
    with pytest.raises(RuntimeError):
        bcn.bc("S7", 2)


def test_reproduce_d6():
    cells = {c["kind"]: c for c in bcn.reproduce("d6")}
    assert cells["order"]["pass"]
    assert cells["bc"]["pass"]
