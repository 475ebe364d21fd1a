import json
import os

import pytest

import dissecta
from dissecta.cli import commands
from dissecta.core.dissection.setmodel import OracleReport
from dissecta.main import main

DATA = os.path.join(os.path.dirname(dissecta.__file__), "data")


def data(name):
    return os.path.join(DATA, name)


def run_json(capsys, *argv):
    code = main(["--format", "json", *argv])
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["dissect", data("sphere.json")], "sphere_dissect.json"),
        (["dissect", data("plane.json"), "--chamber-chi", "1"], "plane_dissect.json"),
    ],
)
def test_golden_reports(capsys, argv, golden):
    assert main(["--format", "json", *argv]) == 0
    with open(os.path.join(DATA, "golden", golden), "r", encoding="utf-8") as f:
        assert capsys.readouterr().out == f.read()


def test_text_report(capsys):
    assert main(["dissect", data("sphere.json")]) == 0
    assert capsys.readouterr().out == (
        "command: dissect\n"
        "inputs.sphere.json: c83a9864d13184a86adc4b0835463acf498172ce2fc75c0d02e59f943359b68d\n"
        "results.sum: 6\n"
        "results.top: S2\n"
        "warnings: []\n"
    )


def test_text_and_json_agree(capsys):
    report = run_json(capsys, "faces", data("two_lines.json"))
    assert main(["faces", data("two_lines.json")]) == 0
    lines = capsys.readouterr().out.splitlines()
    for dim, count in report["results"]["faces"].items():
        assert f"results.faces.{dim}: {count}" in lines
    assert f"results.total: {report['results']['total']}" in lines


def test_mobius_value(capsys):
    report = run_json(capsys, "mobius", data("n5.json"), "--from", "0", "--to", "1")
    assert report["results"] == {"from": "0", "to": "1", "value": 1}


def test_mobius_table(capsys):
    report = run_json(capsys, "mobius", data("m3.json"))
    assert report["results"]["elements"] == 5
    assert report["results"]["mobius"]["0"]["1"] == 2


def test_check(capsys):
    results = run_json(capsys, "check", data("m3.json"))["results"]
    assert results["lattice"] is True
    assert (results["distributive"], results["modular"]) == (False, True)
    assert (results["bottom"], results["top"]) == ("0", "1")


def test_check_reports_non_lattice(capsys, tmp_path):
    path = tmp_path / "antichain.json"
    path.write_text(json.dumps({"elements": ["x", "y"], "covers": []}))
    results = run_json(capsys, "check", str(path))["results"]
    assert results["lattice"] is False
    assert sorted(results["witness"]) == ["x", "y"]


def test_ji(capsys):
    results = run_json(capsys, "ji", data("b3.json"))["results"]
    assert results["ji"] == ["{}", "{1}", "{2}", "{3}"]
    assert results["lower_cover"] == {"{1}": "{}", "{2}": "{}", "{3}": "{}"}


def test_val_with_zaslavsky_check(capsys):
    report = run_json(
        capsys, "val", data("b3.json"), "--check-zaslavsky", data("b3_m.json")
    )
    results = report["results"]
    assert (results["free_rank"], results["torsion"], results["match"]) == (4, [], True)
    assert results["zaslavsky"] == {"{1,2}": True, "{1,2,3}": True}
    assert results["coordinates"]["{1,2,3}"] == {"{}": -2, "{1}": 1, "{2}": 1, "{3}": 1}
    assert set(report["inputs"]) == {"b3.json", "b3_m.json"}


def test_val_of_non_distributive_lattice(capsys):
    report = run_json(capsys, "val", data("m3.json"))
    assert "coordinates" not in report["results"]
    assert report["results"]["distributive"] is False
    assert report["warnings"]


def test_faces(capsys):
    results = run_json(
        capsys, "faces", data("two_lines.json"), "--profile", data("alternating_profile.json")
    )["results"]
    assert results == {"faces": {"0": "1", "1": "4", "2": "4"}, "total": "9"}


@pytest.mark.parametrize(
    "convention, polynomial",
    [("dim", "x^2 + 4*x + 4"), ("codim", "4*x^2 + 4*x + 1"), ("literal", "4*x^2 + 4*x + 1")],
)
def test_fpoly(capsys, convention, polynomial):
    results = run_json(
        capsys, "fpoly", data("two_lines.json"), "--convention", convention
    )["results"]
    assert results["polynomial"] == polynomial
    assert results["at_one"] == "9"


def test_mpoly(capsys):
    results = run_json(capsys, "mpoly", data("two_lines.json"))["results"]
    assert results == {
        "rank": 2,
        "polynomial": "x^2*y^2 - 2*x^2*y - 2*x*y^2 + x^2 + 2*x*y + y^2",
    }


def test_identity(capsys):
    results = run_json(
        capsys, "identity", data("two_circles.json"), "--corollary", "cor69"
    )["results"]
    assert results["lhs"] == results["rhs"] == "8*x^2 + 2"
    assert results["equal"] and results["consistent"]
    assert results["total_faces"] == "10"

    results = run_json(
        capsys, "identity", data("two_lines.json"), "--corollary", "cor68"
    )["results"]
    assert results["lhs"] == "4*x^2 + 4*x + 1"


def test_verify(capsys):
    results = run_json(capsys, "verify", data("two_planes_setmodel.json"))["results"]
    assert (results["lhs"], results["rhs"], results["equal"]) == (3, 3, True)
    assert results["dlattice"]["full_sum"] == 0


def test_failed_check_exits_with_two(capsys, monkeypatch):
    monkeypatch.setattr(
        commands,
        "set_oracle_check",
        lambda model: OracleReport(lhs=1, rhs=2, equal=False),
    )
    assert main(["--format", "json", "verify", data("segment_setmodel.json")]) == 2
    captured = capsys.readouterr()
    assert json.loads(captured.out)["results"]["equal"] is False
    assert captured.err.startswith("failed:")


@pytest.mark.parametrize(
    "argv, message",
    [
        (["dissect", "missing.json"], "cannot read"),
        (["mobius", data("n5.json"), "--from", "0", "--to", "w"], "Did you mean"),
        (["mobius", data("n5.json"), "--from", "0"], "together"),
        (["dissect", data("sphere.json"), "--chamber-chi", "0"], "nonzero"),
        (["identity", data("two_lines.json"), "--corollary", "cor69"], "cor69 needs"),
        (["faces", data("b3.json")], "invalid ArrangementDocument"),
        (["-c", "missing.yaml", "ji", data("b3.json")], "cannot read"),
    ],
)
def test_errors_exit_with_one(capsys, argv, message):
    assert main(argv) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error:")
    assert message in captured.err


def test_usage_errors_exit_with_one(capsys):
    with pytest.raises(SystemExit) as e:
        main(["identity", data("two_lines.json")])
    assert e.value.code == 1
    assert "--corollary" in capsys.readouterr().err

    with pytest.raises(SystemExit) as e:
        main(["fpoly", data("two_lines.json"), "--convention", "degree"])
    assert e.value.code == 1

    with pytest.raises(SystemExit) as e:
        main(["--help"])
    assert e.value.code == 0


def test_verbose_flag(capsys):
    assert main(["-v", "ji", data("n5.json")]) == 0
    assert "results.ji" in capsys.readouterr().out


def test_invalid_environment_is_a_validation_error(capsys, monkeypatch):
    monkeypatch.setenv("DISSECTA_MAX_ELEMENTS", "lots")
    assert main(["dissect", data("sphere.json")]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error: invalid configuration")
