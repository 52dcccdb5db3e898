import json
from pathlib import Path

import numpy as np
import pytest

from inclusion_forge import cli, figures
from inclusion_forge.cli import (
    CliError,
    format_float,
    parse_config,
    read_contours_csv,
    render_svg,
)


@pytest.fixture
def fig1b_path(tmp_path):
    path = tmp_path / "fig1b.json"
    path.write_text(json.dumps(figures.load_case("fig1b")))
    return path


def test_seventeen_digit_floats_round_trip(rng):
    for x in rng.normal(size=50) * 10.0 ** rng.integers(-12, 12, size=50):
        assert float(format_float(x)) == x


def test_solve_writes_all_outputs(tmp_path, fig1b_path, capsys):
    out, svg, diag = tmp_path / "c.csv", tmp_path / "c.svg", tmp_path / "d.json"
    code = cli.main([
        "solve", "--config", str(fig1b_path),
        "--out", str(out), "--svg", str(svg), "--diag", str(diag),
    ])
    assert code == 0
    assert "verdict: VALID" in capsys.readouterr().out
    doc = json.loads(diag.read_text())
    assert doc["diagnostics"]["verdict"] == "VALID"
    assert svg.read_text().startswith("<svg")
    assert out.read_text().splitlines()[0] == "slit_index,bank,xi,re_z,im_z"


def test_csv_round_trip_is_bit_exact(tmp_path, fig1b_path, solve_figure):
    out = tmp_path / "c.csv"
    assert cli.main(["solve", "--config", str(fig1b_path), "--out", str(out)]) == 0
    polylines = read_contours_csv(out)
    res = solve_figure("fig1b")
    for p in res.profiles:
        np.testing.assert_array_equal(polylines[p.slit_index], p.points)


def test_invalid_geometry_exits_one_with_svg(tmp_path):
    cfg_path = tmp_path / "fig4d.json"
    cfg_path.write_text(json.dumps(figures.load_case("fig4d")))
    svg = tmp_path / "f.svg"
    code = cli.main(["solve", "--config", str(cfg_path), "--svg", str(svg)])
    assert code == 1
    assert svg.exists()


def test_malformed_json_exits_two_with_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2,,}')
    code = cli.main(["solve", "--config", str(bad)])
    assert code == 2
    err = capsys.readouterr().err
    assert "line 1" in err and "column" in err


def test_schema_violation_exits_two(tmp_path, capsys):
    doc = figures.load_case("fig1b")
    doc["kappa"] = "not-a-list"
    path = tmp_path / "bad_schema.json"
    path.write_text(json.dumps(doc))
    assert cli.main(["solve", "--config", str(path)]) == 2
    assert "schema" in capsys.readouterr().err


def test_validate_subcommand(tmp_path, fig1b_path, capsys):
    assert cli.main(["validate", "--config", str(fig1b_path)]) == 0
    doc = figures.load_case("fig1b")
    doc["kappa"] = [1.0, 5.0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert cli.main(["validate", "--config", str(bad)]) == 2
    assert "singular" in capsys.readouterr().out


def test_override_flags(tmp_path, fig1b_path):
    diag = tmp_path / "d.json"
    code = cli.main([
        "solve", "--config", str(fig1b_path),
        "--override-rho", "0.5,0.0", "--diag", str(diag),
    ])
    assert code == 1
    doc = json.loads(diag.read_text())
    assert doc["diagnostics"]["verdict"] == "INVALID-UNBOUNDED"
    assert doc["constants"]["rho"] == [0.5, 0.0]


def test_tolerance_env_override(tmp_path, monkeypatch):
    cfg_path = tmp_path / "fig2d.json"
    cfg_path.write_text(json.dumps(figures.load_case("fig2d")))
    assert cli.main(["solve", "--config", str(cfg_path)]) == 1
    monkeypatch.setenv("INCLUSION_FORGE_TOL", "10.0")
    assert cli.main(["solve", "--config", str(cfg_path)]) == 0


def test_nodes_and_points_flags(tmp_path, fig1b_path):
    out = tmp_path / "c.csv"
    code = cli.main([
        "solve", "--config", str(fig1b_path),
        "--nodes", "96", "--points", "40", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    # 2 contours, each 2P-1 points (banks share endpoints, closed)
    assert len(lines) == 1 + 2 * (2 * 40 - 1)


def test_svg_is_a_pure_function_of_the_result(tmp_path, fig1b_path):
    svg1, svg2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert cli.main(["solve", "--config", str(fig1b_path), "--svg", str(svg1)]) == 0
    assert cli.main(["solve", "--config", str(fig1b_path), "--svg", str(svg2)]) == 0
    assert svg1.read_bytes() == svg2.read_bytes()


def test_render_svg_is_deterministic_and_equal_aspect():
    z = np.exp(1j * np.linspace(0, 2 * np.pi, 33))
    one = render_svg([z])
    two = render_svg([z])
    assert one == two
    # square data box stays square on the page
    assert 'width="480" height="480.000"' in one


def test_parse_config_defaults():
    doc = figures.load_case("fig1b")
    del doc["free"]
    del doc["numerics"]
    cfg, loading, materials, free, numerics, overrides = parse_config(doc)
    assert free.c_m1 == 1.0 + 0.0j
    assert numerics.N == 64 and numerics.M == 64 and numerics.P == 200
    assert overrides == {}


def test_parse_config_rejects_slit_count_mismatch():
    doc = figures.load_case("fig1b")
    doc["n"] = 3
    with pytest.raises(CliError):
        parse_config(doc)


def test_numerical_failure_exits_three(tmp_path, capsys):
    # single inclusion with equal real stresses degenerates to a segment
    doc = figures.load_case("fig1a")
    doc["loading"] = {"tau1": 1.0, "tau2": 0.0, "tau1_inf": 1.0, "tau2_inf": 0.0}
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(doc))
    assert cli.main(["solve", "--config", str(path)]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_reproduce_figures_writes_everything(tmp_path):
    code = cli.main(["reproduce-figures", "--outdir", str(tmp_path / "figs")])
    assert code == 0
    outdir = tmp_path / "figs"
    for case in figures.FIGURE_CASES:
        assert (outdir / f"{case.name}.svg").exists()
        polylines = read_contours_csv(outdir / f"{case.name}.csv")
        assert len(polylines) == figures.get_case(case.name).n_contours
    summary = json.loads((outdir / "summary.json").read_text())
    verdicts = {row["case"]: row["verdict"] for row in summary}
    assert verdicts["fig2c"] == "VALID"
    assert verdicts["fig2d"] == "INVALID-UNBOUNDED"
    assert verdicts["fig4d"] == "INVALID-GEOMETRY"
