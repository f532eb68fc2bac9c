import pytest

import rsrepair


def test_field_gf8():
    f = rsrepair.field(2, 1, 3)
    assert f["order"] == 8
    assert f["ext_modulus"] == [[1], [1], [0], [1]]
    assert f["primitive"] == 2


def test_bound_values():
    b = rsrepair.bound(14, 16, 2, 4)
    assert b["integral_subsymbols"] == 11
    assert b["integral_bits"] == 44.0
    assert b["fractional_bits_ceil"] == 28
    assert rsrepair.bound(8, 2, 3, 2)["integral_subsymbols"] == 14
    assert rsrepair.brute_force_min_bandwidth(8, 2, 3, 2) == 14


def test_worked_table():
    text = rsrepair.scheme_table(2, 3, 6, scheme="c1", ascii=True)
    assert "g_2 = xi(x-xi)" in text
    assert "rank_2(.)          | 3    | 2" in text
    s = rsrepair.build_scheme(2, 3, 6, scheme="c1")
    assert s["profile"]["total_subsymbols"] == 14


def test_construction_3_meets_bound():
    s = rsrepair.build_scheme(3, 3, 18, scheme="c3", s=2, erased=5)
    assert s["profile"]["total_subsymbols"] == 26
    assert s["s"] == 2


def test_repair_round_trip():
    out = rsrepair.repair([3, 1, 4, 1, 5, 9, 2, 6], p=2, t=4, scheme="c3", erased=7)
    assert out["reconstructed"] == out["stored"]
    assert out["subsymbols"] == rsrepair.build_scheme(2, 4, 8, scheme="c3", erased=7)["profile"]["total_subsymbols"]


def test_simulate_is_deterministic():
    a = rsrepair.simulate(2, 4, 12, scheme="gw", trials=2, seed=9)
    b = rsrepair.simulate(2, 4, 12, scheme="gw", trials=2, seed=9, threads=3)
    assert a == b
    row = a["rows"][0]
    assert row["all_verified"] and row["sound"] and row["conserved"]
    assert row["min_subsymbols"] >= row["bound"]["integral_subsymbols"]


def test_errors():
    with pytest.raises(rsrepair.PreconditionError, match="r = n - k >= 2"):
        rsrepair.build_scheme(2, 3, 7, scheme="c1")
    with pytest.raises(rsrepair.InvalidArgument):
        rsrepair.bound(8, 6, 1, 2)
    with pytest.raises(rsrepair.Error):
        rsrepair.build_scheme(2, 3, 6, scheme="c4")


def test_verify_subset():
    res = rsrepair.verify(only=["fig1", "lemma7"])
    assert [r["name"] for r in res] == ["fig1", "lemma7"]
    assert all(r["passed"] for r in res)
    assert "repair" in rsrepair.suite_names()
