from fractions import Fraction

import pytest

import cubex


def test_grid_weights():
    g = cubex.family("grid:3x2")
    assert g.vertex_count == 6
    assert g.validate()["ok"]
    w = cubex.weights(g, 2, "(0,0)", "(2,1)")
    assert w == {"(0,0)": 1, "(0,1)": 2, "(1,0)": 1, "(1,1)": 1, "(2,0)": 1}
    norm = cubex.weights(g, 2, "(0,0)", "(2,1)", normalized=True)
    assert sum(norm.values()) == 1
    assert norm["(0,1)"] == Fraction(1, 3)


def test_median_and_interval():
    g = cubex.family("grid:3x3")
    assert g.median("(0,0)", "(2,0)", "(1,2)") == "(1,0)"
    assert g.distance("(0,0)", "(2,2)") == 4
    assert set(g.interval("(0,0)", "(1,1)")) == {"(0,0)", "(0,1)", "(1,0)", "(1,1)"}


def test_eta_and_ideal_points():
    e = cubex.family("edge")
    assert cubex.eta(e, 3, "y") == {"x": Fraction(1, 4), "y": Fraction(3, 4)}
    pts = cubex.ideal_points("grid:4x4")
    g = cubex.family("grid:4x4")
    z = pts["(+inf,+inf)"]
    assert g.is_admissible(z)
    assert sum(cubex.weights(g, 3, "(0,0)", z).values()) == 10


def test_verify_weights():
    r = cubex.verify_weights(cubex.family("cube:2"), 4, jobs=2)
    assert r["ok"] and r["checks"] > 0
    bad = cubex.verify_weights(cubex.family("grid:3x3").with_ambient_dimension(1), 2)
    assert not bad["ok"]


def test_continuity_star():
    rows = cubex.continuity("star:8", "l1", "center", 4)
    center = next(r for r in rows if r["point"] == "center")
    assert center["verdict"] == "discontinuous"
    assert cubex.phi(cubex.family("star:8"), "l1", "center", 4, "center") == 4


def test_edge_certificate():
    e = cubex.family("edge")
    act = cubex.Action(e, {"s": {"x": "y", "y": "x"}})
    assert act.order == 2
    cert = act.certificate(3, epsilon="1")
    assert cert["mu"]["s"] == {"e": Fraction(1, 4), "s": Fraction(3, 4)}
    assert cert["max_dev"] == Fraction(1, 2)
    assert cert["bounds_hold"] and cert["below_epsilon"]
    assert act.verify_cosets()["ok"]


def test_builtin_action():
    act = cubex.Action.builtin("cube:3")
    assert act.order == 48
    cert = act.certificate(4)
    assert all(sum(m.values()) == 1 for m in cert["mu"].values())


def test_not_an_automorphism():
    sq = cubex.parse_complex(
        '{"hyperplanes": ["A", "B"], "base": "a", "vertices": {"a": [1, 1], "b": [-1, 1], "c": [-1, -1], "d": [1, -1]}}'
    )
    with pytest.raises(cubex.CubexError):
        cubex.Action(sq, {"s": {"a": "b", "b": "a"}})


def test_artin():
    r = cubex.artin_report(["a", "b"], [[1, 2], [2, 1]])
    assert r["exact"] and r["stabilizer_types"] == ["A1xA1"]
    tri = cubex.artin_fc(["a", "b", "c"], [[1, 3, 3], [3, 1, 3], [3, 3, 1]])
    assert not tri["is_fc"] and sorted(tri["witness"]) == ["a", "b", "c"]
    free = cubex.artin_fc(["a", "b"], [[1, None], [None, 1]])
    assert free["is_fc"]
    with pytest.raises(cubex.CubexError):
        cubex.artin_fc(["a", "b"], [[1, 3], [2, 1]])


def test_bad_spec():
    with pytest.raises(cubex.CubexError):
        cubex.family("grid:0x2")
    with pytest.raises(ValueError):
        cubex.family("blob")
