import json
from fractions import Fraction

import pandas as pd
import pytest

from qdomains.algebra import X, Y
from qdomains.cli import Scenario, parse_xy_polynomial, run
from qdomains.cli.cli import (
    EXIT_CHECK_FAILED,
    EXIT_INVALID,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
)

DISK = '{"z1": ["2", "0"], "r": "1"}'


def _scenario(path, schedule, times=("1/2", "1"), degree=0, **outputs):
    config = {
        "medium": "axis:1",
        "source": {"z1": ["4", "0"], "degree": degree},
        "schedule": schedule,
        "outputs": {"times": list(times), **outputs},
    }
    path.write_text(json.dumps(config), encoding="utf-8")
    return str(path)


def test_fluxes_for_the_disk(capsys):
    assert run(["fluxes", "--medium", "axis:1", "--map", DISK]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["Q"] == "1"
    assert payload["Qj"] == [["1/8", "0"]]
    assert payload["source_strengths"] == ["1", ["-1/8", "0"]]
    assert payload["residuals"] and payload["dropped_residuals"]
    assert len(payload["residuals"]) + len(payload["dropped_residuals"]) == 6
    for row in payload["residuals"] + payload["dropped_residuals"]:
        assert row["residual"] == ["0", "0"]
    assert all(row["dropped"] for row in payload["dropped_residuals"])
    assert payload["passed"] is True


def test_map_can_come_from_a_file(tmp_path, capsys):
    path = tmp_path / "map.json"
    path.write_text(DISK, encoding="utf-8")
    assert run(["moments", "--map", str(path), "--pmax", "2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {
        "reduced": [["1", "0"], ["0", "0"], ["0", "0"]]
    }


@pytest.mark.parametrize(
    "argv",
    [
        ["fluxes", "--medium", "axis:x", "--map", DISK],
        ["fluxes", "--medium", "axis:1", "--map", '{"z1": [0, 1], "r": "1"}'],
        ["fluxes", "--medium", "axis:1", "--map", '{"r": "-1"}'],
        ["intertwiner", "--medium", "cone:3"],
        ["ball-check", "--center", "2,0,0", "--h", "xi1**2"],
        ["fluxes", "--medium", "axis:1"],
        ["no-such-command"],
    ],
)
def test_invalid_input_exits_with_two(argv, capsys):
    assert run(argv) == EXIT_INVALID


def test_validation_diagnostic_is_json(capsys):
    run(["fluxes", "--medium", "axis:1", "--map", '{"r": "1", "extra": 1}'])
    diagnostic = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert diagnostic["error"] == "validation"
    assert diagnostic["details"]


def test_intertwiner_outputs_bundle(capsys):
    assert run(["intertwiner", "--medium", "axis:1", "--raw"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["medium"] == {"family": "axis", "n": 1}
    assert payload["normalized"] is False
    assert {"d", "coeff"} == set(payload["T"][0])
    assert payload["zeta"]


def test_check_intertwining_runs_both_checks(capsys):
    argv = ["check-intertwining", "--medium", "dihedral:1,1,0", "--degree", "4"]
    assert run(argv) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert [r["check"] for r in reports] == ["intertwining", "schrodinger-gauge"]
    assert all(r["passed"] for r in reports)


def test_search_without_hits_fails(capsys):
    argv = ["search-deformed", "--max-n", "1", "--max-k", "2", "--target", "x**7"]
    assert run(argv) == EXIT_CHECK_FAILED
    assert json.loads(capsys.readouterr().out)["exhausted"] is True


def test_parse_xy_polynomial():
    assert parse_xy_polynomial("x**2*(5*y**2 - x**2)") == X**2 * (Y**2 * 5 - X**2)
    with pytest.raises(ValueError):
        parse_xy_polynomial("x +* y")


def test_verify_identity_on_the_disk(capsys):
    argv = ["verify-identity", "--medium", "axis:1", "--map", DISK, "--basis-size", "3"]
    assert run(argv) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["identity"]["passed"] and payload["kernel"]["passed"]


def test_pressure_check(capsys):
    assert run(["pressure-check", "--r", "1", "--rdot", "1", "--z1", "2"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)["report"]
    assert report["pde_residual_zero"] is True


def test_ball_check(capsys):
    argv = ["ball-check", "--center", "2,0,0", "--h", "xi1**2 - xi2**2", "--h", "xi2*xi3"]
    assert run(argv) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["reports"]) == 2


def test_grow_writes_frames_and_boundaries(tmp_path):
    scenario = _scenario(
        tmp_path / "scenario.json", [{"t_start": "0", "t_end": "1", "q": "1"}]
    )
    out = tmp_path / "out"
    argv = ["--out", str(out), "grow", "--scenario", scenario, "--emit-boundary", "16"]
    assert run(argv) == EXIT_OK
    lines = (out / "frames.jsonl").read_text(encoding="utf-8").splitlines()
    frames = [json.loads(line) for line in lines]
    assert [frame["t"] for frame in frames] == ["1/2", "1"]
    assert float(Fraction(frames[1]["map"]["r"])) == pytest.approx(1, abs=1e-10)
    boundary = pd.read_csv(out / "boundary_0001.csv")
    assert list(boundary.columns) == ["x", "y"]
    assert len(boundary) == 16


def test_grow_reports_breakdown(tmp_path, monkeypatch):
    from qdomains.errors import NonUnivalent
    from qdomains.growth import growth as growth_module

    def solver(targets, **kwargs):
        raise NonUnivalent("boundary cusps")

    monkeypatch.setattr(growth_module, "solve_map_from_moments", solver)
    scenario = _scenario(
        tmp_path / "scenario.json", [{"t_start": "0", "t_end": "1", "q": "1"}]
    )
    out = tmp_path / "out"
    assert run(["--out", str(out), "grow", "--scenario", scenario]) == EXIT_NO_CONVERGENCE
    breakdown = json.loads((out / "breakdown.json").read_text(encoding="utf-8"))
    assert len(breakdown["breakdown_time"]) == 2
    assert (out / "frames.jsonl").read_text(encoding="utf-8") == ""


def test_path_check(tmp_path, capsys):
    first = _scenario(
        tmp_path / "a.json",
        [{"t_start": "0", "t_end": "1", "q": "1", "qj": ["1/10"]}],
        degree=1,
    )
    second = _scenario(
        tmp_path / "b.json",
        [
            {"t_start": "0", "t_end": "1/2", "q": "1", "qj": ["1/5"]},
            {"t_start": "1/2", "t_end": "1", "q": "1"},
        ],
        degree=1,
    )
    argv = ["path-check", "--scenario", first, "--against", second, "--t-final", "1"]
    assert run(argv) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["passed"] is True


def test_scenario_rejects_rates_beyond_degree():
    with pytest.raises(ValueError):
        Scenario.model_validate(
            {
                "medium": "axis:1",
                "source": {"z1": ["2", "0"]},
                "schedule": [{"t_start": 0, "t_end": 1, "q": 1, "qj": [1]}],
            }
        )
