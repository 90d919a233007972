#!/usr/bin/env python3
"""
Tests for the command-line interface: exit codes, text and JSON output.
"""

import json

import pytest

from conftest import fixture_path
from qhworkbench.cli import main, parse_range, parse_weight
from qhworkbench.errors import InputError
from qhworkbench.graded import Weight


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_range():
    assert parse_range("-3..3") == [-3, -2, -1, 0, 1, 2, 3]
    assert parse_range("2..2") == [2]
    assert parse_range("3..1") == []
    with pytest.raises(InputError):
        parse_range("-3:3")


def test_parse_weight():
    assert parse_weight("-2,-1") == Weight(-2, -1)
    assert parse_weight("(1,0)") == Weight(1, 0)
    with pytest.raises(InputError):
        parse_weight("1,2,3")


def test_validate_text_output(capsys):
    code = main(["validate", "--algebra", fixture_path("fix-a2.json")])
    out = capsys.readouterr().out

    assert code == 0
    assert out.startswith("validate: PASS\n")
    assert "  dimension: 3" in out

    print("✅ Validate text output test passed")


def test_validate_with_module(capsys):
    code, report = run_json(
        capsys, "validate", "-a", fixture_path("fix-d3.json"), "-m", fixture_path("modules", "d3-proj-o.json")
    )
    assert code == 0
    tables = report["results"][0]["tables"]
    assert tables["vertices"] == ["o", "m", "p"]
    assert tables["projective_dims"] == {"o": 3, "m": 1, "p": 1}
    assert tables["module"]["dims"] == {"o": 1, "m": 1, "p": 1}


def test_json_flag_after_the_command(capsys):
    code = main(["check-qh", "--algebra", fixture_path("fix-a2.json"), "--json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["command"] == "check-qh"
    assert report["pass"] is True


def test_hom_and_ext1(capsys):
    a2 = fixture_path("fix-a2.json")
    simple_a = fixture_path("modules", "a2-simple-a.json")
    simple_b = fixture_path("modules", "a2-simple-b.json")

    code, report = run_json(capsys, "hom", "-a", a2, "--source", fixture_path("modules", "a2-proj-a.json"),
                            "--target", simple_a)
    assert code == 0
    assert report["results"][0]["tables"]["dim"] == 1

    code, report = run_json(capsys, "ext1", "-a", a2, "--source", simple_a, "--target", simple_b)
    assert code == 0
    assert report["results"][0]["tables"]["dim"] == 1

    code, report = run_json(capsys, "ext1", "-a", a2, "--source", simple_b, "--target", simple_a)
    assert report["results"][0]["tables"]["dim"] == 0


@pytest.mark.parametrize("name", ["fix-a2", "fix-a2r", "fix-d3"])
def test_quasihereditary_fixtures_pass(capsys, name):
    path = fixture_path(f"{name}.json")
    for command in ("check-qh", "reciprocity", "skew-check", "standard", "costandard", "ext-support"):
        assert main([command, "--algebra", path]) == 0, command
    capsys.readouterr()


def test_a3_passes_as_a_chain(capsys):
    path = fixture_path("fix-a3.json")
    for command in ("check-qh", "reciprocity", "skew-check"):
        assert main([command, "--algebra", path]) == 0, command
    capsys.readouterr()


def test_a3_with_incomparable_strata_fails(capsys):
    path = fixture_path("fix-a3-incomparable.json")
    assert main(["check-qh", "--algebra", path]) == 1
    assert main(["skew-check", "--algebra", path]) == 1
    err = capsys.readouterr().err
    assert "a check failed" in err


def test_filtration(capsys):
    code, report = run_json(capsys, "filtration", "-a", fixture_path("fix-d3.json"),
                            "-m", fixture_path("modules", "d3-proj-o.json"))
    assert code == 0
    assert [r["check"] for r in report["results"]] == ["filtration", "above-equivalence"]
    assert report["results"][0]["tables"]["chain"] == [[1, 1, 1], [0, 1, 1], [0, 0, 1], [0, 0, 0]]


@pytest.mark.parametrize("method", ["stratified", "iterative"])
def test_projcover_and_injhull(capsys, method):
    d3 = fixture_path("fix-d3.json")
    code, report = run_json(capsys, "projcover", "-a", d3, "--vertex", "o", "--method", method)
    assert code == 0
    assert report["method"] == method
    assert report["results"][0]["tables"]["dims"] == {"o": 1, "m": 1, "p": 1}
    assert report["results"][0]["tables"]["isomorphic_to_reference"] is True

    assert main(["injhull", "-a", d3, "--method", method]) == 0
    capsys.readouterr()


def test_stratified_cover_reports_purity(capsys):
    code, report = run_json(capsys, "projcover", "-a", fixture_path("fix-a3.json"), "--vertex", "a")
    assert code == 1
    checks = {r["check"]: r["pass"] for r in report["results"]}
    assert checks == {"projcover[a]": True, "purity[a]": False}
    levels = report["results"][0]["witnesses"]["levels"]
    assert [lvl["level"] for lvl in levels] == [0, 1, 2]


def test_invalid_inputs_exit_2(capsys):
    assert main(["validate", "--algebra", fixture_path("loop.json")]) == 2
    assert "unbounded cycle through vertex 'v'" in capsys.readouterr().err

    assert main(["validate", "-a", fixture_path("fix-a2.json"), "-m",
                 fixture_path("modules", "a2-bad-arrow.json")]) == 2
    assert main(["validate", "--algebra", fixture_path("missing.json")]) == 2
    assert main(["standard", "-a", fixture_path("fix-a2.json"), "--vertex", "zz"]) == 2
    assert main(["nodal-verify", "--range", "0-3"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_invalid_input_json_error(capsys):
    code, report = run_json(capsys, "validate", "--algebra", fixture_path("loop.json"))
    assert code == 2
    assert report["pass"] is False
    assert "infinite-dimensional" in report["error"]


def test_schema_error_lists_the_violation(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": [], "arrows": [{"name": "x"}]}), encoding="utf-8")
    assert main(["validate", "--algebra", str(path)]) == 2
    err = capsys.readouterr().err
    assert "failed schema validation" in err


def test_nodal_block_round_trips_through_validate(tmp_path, capsys):
    out = tmp_path / "block0.json"
    code, report = run_json(capsys, "nodal-block", "--n", "0", "--output", str(out))
    assert code == 0
    assert report["results"][0]["tables"]["block"]["n"] == 0
    assert report["results"][0]["witnesses"]["block_leaks"]

    assert main(["check-qh", "--algebra", str(out)]) == 0
    assert main(["skew-check", "--algebra", str(out)]) == 0
    capsys.readouterr()


def test_nodal_verify_negative_range(capsys):
    code, report = run_json(capsys, "nodal-verify", "--range", "-1..1", "--depth", "4")
    assert code == 0
    assert [b["n"] for b in report["blocks"]] == [-1, 0, 1]
    assert report["results"][-1]["check"] == "branch-leading-terms"

    print("✅ Nodal verify CLI test passed")


def test_towers_with_oracle_and_fixtures(capsys):
    code, report = run_json(
        capsys, "towers", "--support", "C+", "--twist", "0,0", "--oracle",
        "--fixture", fixture_path("towers", "tor-C+.json"),
        "--fixture", fixture_path("towers", "ext-C+.json"),
    )
    assert code == 0
    checks = [r["check"] for r in report["results"]]
    assert checks[:2] == ["towers", "oracle-agreement"]
    assert len(checks) == 4
    assert report["results"][0]["tables"]["tor"]["support"] == "C+"


def test_towers_negative_twist(capsys):
    code, report = run_json(capsys, "towers", "--support", "C-", "--twist", "-2,-1", "--depth", "3")
    assert code == 0
    assert report["results"][0]["tables"]["ext"]["twist"] == [-2, -1]


def test_diff(tmp_path, capsys):
    def write(name, *argv):
        main(["--json", *argv])
        path = tmp_path / name
        path.write_text(capsys.readouterr().out, encoding="utf-8")
        return str(path)

    first = write("a.json", "check-qh", "-a", fixture_path("fix-a2.json"))
    again = write("b.json", "check-qh", "-a", fixture_path("fix-a2.json"))
    other = write("c.json", "check-qh", "-a", fixture_path("fix-d3.json"))
    recip = write("d.json", "reciprocity", "-a", fixture_path("fix-a2.json"))

    assert main(["diff", first, again]) == 0
    assert main(["diff", first, other]) == 1
    assert main(["diff", first, recip]) == 2
    capsys.readouterr()


@pytest.mark.parametrize("name", ["fix-a2", "fix-a2r", "fix-d3", "fix-a3"])
def test_filtration_on_random_modules(capsys, name):
    code, report = run_json(capsys, "filtration", "-a", fixture_path(f"{name}.json"), "--trials", "15", "--seed", "5")
    assert code == 0
    assert [r["check"] for r in report["results"]] == ["filtration", "above-equivalence"]
    assert report["results"][0]["tables"] == {"trials": 15, "seed": 5, "max_dim": 3}
    assert report["results"][0]["witnesses"]["failures"] == []


def test_filtration_needs_a_module_or_trials(capsys):
    assert main(["filtration", "-a", fixture_path("fix-a2.json")]) == 2
    assert "--trials" in capsys.readouterr().err


def test_runs_are_byte_identical(capsys):
    argv = ["--json", "filtration", "-a", fixture_path("fix-d3.json"), "--trials", "5", "--seed", "3"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
