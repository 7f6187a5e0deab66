import math

import pytest

import involute as inv


def test_expression_round_trip():
    e = inv.Expr("2^3^t")
    assert e(1) == 8
    assert inv.Expr(str(e)) == e
    assert inv.Expr("abs(-3)*pi")(0) == pytest.approx(9.4247779607693797, rel=1e-15)


def test_parse_error_reports_offset():
    with pytest.raises(inv.InvoluteError, match="offset 5"):
        inv.Expr("cos(t")


def test_classification():
    assert inv.classify_ivp(2, 0) == "C1"
    case, k = inv.classify_bvp("cos(t)", "0.5*cos(t)+sin(t)", 1.5)
    assert case == "C1'" and k == pytest.approx(0.5)
    assert inv.classify_bvp("1", "-1")[0] == "C4'"


def test_constants():
    assert inv.eta(2, 0) == pytest.approx(math.pi / 4, abs=1e-12)
    assert inv.sigma_threshold(0.5) == pytest.approx(0.60459978807807262, abs=1e-13)
    assert inv.bound_F("1", 1) == pytest.approx(1.1565176427496657, abs=1e-12)


def test_ivp_kernel_and_solution():
    G = inv.green_ivp(1, 0)
    assert G(1, 0.5) == pytest.approx(math.cos(0.5), abs=1e-14)
    assert G.jump == 1
    u = inv.solve_ivp(1, 0, "1", 0, 0, [1.0])
    assert u[0] == pytest.approx(1.3011686789397568, abs=1e-12)
    o = inv.oracle_ivp(1, 0, "1", 0, 0, [1.0])
    assert o[0] == pytest.approx(u[0], abs=1e-9)


def test_periodic_solutions():
    r = inv.solve_bvp("cos(t)", "0", "1", math.pi / 2, [0.0, -1.0])
    assert r["u"][0] == pytest.approx(1.6650196197568941, abs=1e-10)
    assert r["u"][1] == pytest.approx(1.8118347099267731, abs=1e-10)
    m = inv.solve_bvp("0.1", "0.1*t+0.05*cos(t)", "1", 1.0, [0.0])
    assert m["method"] == "picard" and m["case"] == "Mixed"
    assert m["u"][0] == pytest.approx(7.158153863439072, abs=1e-9)


def test_resonance_and_gate():
    with pytest.raises(inv.InvoluteError, match="resonant"):
        inv.solve_bvp("1", "-1", "1", 1.0, [0.0])
    with pytest.raises(inv.InvoluteError, match="not-guaranteed"):
        inv.solve_bvp("1", "t+cos(t)", "t", 1.0, [0.0])
    fam = inv.resonant_family("1", "-1-sin(t)", "t", 1.0, 0.5, [-1.0, 1.0])
    assert fam["solvable"]
    assert fam["u"][0] == pytest.approx(fam["u"][1], abs=1e-9)


def test_sign_check():
    ok = inv.constant_sign_check("1", "0", math.pi / 4 - 0.01)
    assert ok["sign"] == "positive" and ok["consistent"]
    assert inv.constant_sign_check("1", "0", math.pi / 4 + 0.05)["sign"] == "unknown"


def test_involutions():
    assert inv.verify_involution("1/t", 0.5, 2)
    assert not inv.verify_involution("1/t", 0.5, 3)
