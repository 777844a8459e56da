import json
import math
import pathlib

import pytest

import steklov

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def test_load_and_spectrum():
    g = steklov.Graph.load(str(FIXTURES / "halfline5.json"))
    assert g.names == ["0", "1", "2", "3", "4", "5"]
    assert g.interior == [1, 2, 3, 4, 5]
    assert len(g.content_hash) == 16

    w = g.window("0..4")
    assert (w.size, w.boundary_size, w.collar_size) == (5, 1, 1)
    sigma = w.sigma()
    assert len(sigma) == 1
    assert abs(sigma[0] - 0.2) < 1e-12
    assert abs(w.capacity([1.0]) - 0.2) < 1e-12


def test_parse_and_roundtrip():
    g = steklov.Graph.parse(
        '{"vertices":[{"id":"a","role":"interior"},{"id":"b"}],'
        '"edges":[["a","b",2.0]]}'
    )
    again = steklov.Graph.parse(g.to_json())
    assert again.names == g.names
    assert again.interior == g.interior


def test_parse_error_is_value_error():
    with pytest.raises(steklov.InputError, match="parse error at byte"):
        steklov.Graph.parse('{"vertices": [')
    assert issubclass(steklov.InputError, ValueError)


def test_star_cheeger_and_higher_order():
    g = steklov.Graph.load(str(FIXTURES / "star.json"))
    w = g.window("0..2")
    ch = w.cheeger()
    assert ch["jammes"] == pytest.approx(0.5)
    assert ch["classic"] == pytest.approx(0.2)
    hi = w.higher_order(2)
    assert hi["jammes_k"] == pytest.approx(1.0)
    assert sorted(map(tuple, hi["witness_jammes"])) == [("b1",), ("b2",)]


def test_dtn_matrix_shape():
    g = steklov.Graph.load(str(FIXTURES / "star.json"))
    w = g.window("0..2")
    form = w.dtn_matrix()
    m, mass = form["matrix"], form["mass"]
    assert len(m) == 2 and len(m[0]) == 2
    # symmetric with nonpositive off-diagonal (Schur of a Laplacian)
    assert m[0][1] == pytest.approx(m[1][0])
    assert m[0][1] <= 0
    assert mass == [1.0, 1.0]


def test_blowup_approaches_sigma():
    g = steklov.Graph.load(str(FIXTURES / "halfline5.json"))
    w = g.window("0..4")
    sigma = w.sigma()
    lam = w.blowup_spectrum(2.0**20)
    assert abs(lam[0] - sigma[0]) < 1e-3


def test_exhaust_half_line_rows():
    res = steklov.exhaust('{"family":"half_line"}', "sigma", depth=5, tol=0.0)
    for radius, _closed, value, _gap in res["rows"]:
        assert value == pytest.approx(1.0 / (radius + 1), abs=1e-13)
    assert res["stop_reason"] == "radius-cap"


def test_recurrence_verdicts():
    line = steklov.exhaust('{"family":"half_line"}', "recurrence", tol=1e-4)
    assert line["verdict"] == "recurrent"
    tree = steklov.exhaust(
        '{"family":"regular_tree","degree":3}', "recurrence", tol=1e-4
    )
    assert tree["verdict"] == "transient"


def test_verify_fixtures_only():
    rep = steklov.verify(fixtures_only=True)
    assert rep["all_pass"] is True
    assert rep["failures"] == 0
    assert [f["name"] for f in rep["fixtures"]] == [
        "halfline5",
        "star",
        "loop_triangle",
    ]


def test_run_cli_roundtrip():
    rc, out, err = steklov.run_cli(
        ["spectrum", "--graph", str(FIXTURES / "halfline5.json"),
         "--window", "0..4"]
    )
    assert rc == 0 and err == ""
    rep = json.loads(out)
    assert rep["schema"] == "steklov-report/1"
    assert rep["sigma"][0] == pytest.approx(0.2)

    rc, _out, err = steklov.run_cli(
        ["spectrum", "--graph", "/no/such/file.json", "--window", "all"]
    )
    assert rc == 2
    assert "file" in err.lower() or "open" in err.lower()


def test_harmonic_extension_is_linear_on_path():
    g = steklov.Graph.load(str(FIXTURES / "halfline5.json"))
    w = g.window("0..4")
    u = w.harmonic_extension([1.0])
    for x, ux in enumerate(u):
        assert ux == pytest.approx((5 - x) / 5, abs=1e-13)


def test_budget_error_type():
    with pytest.raises(steklov.BudgetError):
        steklov.exhaust(
            '{"family":"regular_tree","degree":3}', "sigma", budget=2
        )
    assert issubclass(steklov.BudgetError, RuntimeError)
