"""End-to-end command-line checks, run in process with one script smoke."""

import json
import subprocess
import sys

import pytest

import hcforms.cli as cli
from hcforms.errors import InternalInvariantError

GT13_TEXT = '{"family": {"id": "gt", "parameters": {"t": "1/3"}}}'

BROKEN_OBJ = {
    "dimension": 4,
    "brackets": [[1, 2, ["1", "0", "0", "0"]],
                 [1, 3, ["0", "1", "0", "0"]]],
    "I": [["0", "-1", "0", "0"], ["1", "0", "0", "0"],
          ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
    "J": [["0", "0", "-1", "0"], ["0", "0", "0", "1"],
          ["1", "0", "0", "0"], ["0", "-1", "0", "0"]],
}


@pytest.fixture
def invoke(capsys):
    def _invoke(*argv, expect=0):
        code = cli.run(list(argv))
        captured = capsys.readouterr()
        assert code == expect, (argv, code, captured.err[:300])
        return captured.out, captured.err
    return _invoke


@pytest.fixture(scope="module")
def gt13_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "gt13.json"
    path.write_text(GT13_TEXT)
    return str(path)


def test_family_analyze_midpoint(invoke):
    out, _ = invoke("family", "gt", "--param", "t=1/2", "analyze")
    assert "abelian structure: true" in out
    assert "hkt: true" in out
    assert "H^{2,0}_dolbeault: 6" in out


def test_family_hkt_negative_still_exits_zero(invoke):
    out, _ = invoke("family", "nilpotent8", "--param", "t1=1", "hkt")
    assert "hkt: false" in out


def test_family_analyze_generic(invoke):
    out, _ = invoke("family", "gt", "--param", "t=1/3", "analyze",
                    "--format", "table")
    assert "H^{2,0}_dolbeault: 4" in out
    assert "H^{2,0}_bott-chern: 5" in out
    assert "sl: true" in out and "hkt: false" in out


def test_validate_broken_algebra(invoke, tmp_path):
    path = tmp_path / "broken.alg"
    path.write_text(json.dumps(BROKEN_OBJ))
    out, err = invoke("validate", "--input", str(path), expect=2)
    diagnostic = json.loads(err)
    assert diagnostic["error"] == "JACOBI_VIOLATION"
    assert diagnostic["details"]["triple"] == [1, 2, 3]
    assert out == ""


def test_float_literal_diagnostic(invoke, tmp_path):
    path = tmp_path / "floaty.json"
    path.write_text('{"family": {"id": "gt", "parameters": {"t": 0.5}}}')
    _, err = invoke("analyze", "--input", str(path), expect=2)
    assert json.loads(err)["error"] == "NON_RATIONAL_LITERAL"


def test_malformed_json_diagnostic(invoke, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"family":')
    _, err = invoke("validate", "--input", str(path), expect=2)
    assert json.loads(err)["error"] == "PARSE_ERROR"


def test_missing_file_diagnostic(invoke):
    _, err = invoke("validate", "--input", "/nope.json", expect=2)
    diagnostic = json.loads(err)
    assert diagnostic["error"] == "PARSE_ERROR"
    assert "/nope.json" in diagnostic["message"]


def test_validate_json_report(invoke, gt13_path):
    out, _ = invoke("validate", "--input", gt13_path, "--format", "json")
    obj = json.loads(out)
    assert obj["valid"] is True and obj["integrable"] is True
    assert obj["family"] == {"id": "gt", "parameters": {"t": "1/3"}}


def test_cohomology_subcommand(invoke, gt13_path):
    out, _ = invoke("cohomology", "--input", gt13_path, "--p", "2",
                    "--kind", "bott-chern", "--format", "json")
    obj = json.loads(out)
    assert obj["dim"] == 5 and obj["kind"] == "bott-chern"

    out, _ = invoke("cohomology", "--input", gt13_path, "--p", "3",
                    "--kind", "aeppli")
    assert "H^{3,0}_aeppli: 2" in out


def test_hkt_subcommand(invoke, gt13_path):
    out, _ = invoke("hkt", "--input", gt13_path, "--format", "json")
    obj = json.loads(out)
    assert obj["hkt"] is False
    assert obj["holomorphic_closed"] is False
    assert obj["torsions_equal"] is False


def test_sl_subcommand(invoke, gt13_path):
    out, _ = invoke("sl", "--input", gt13_path, "--format", "json")
    obj = json.loads(out)
    assert obj["sl"] is True and obj["top_form_closed"] is True
    assert obj["trivializing_form"] is not None


def test_analyze_json_payload(invoke, gt13_path):
    out, _ = invoke("analyze", "--input", gt13_path, "--format", "json")
    obj = json.loads(out)
    assert obj["predicates"]["sl"]["value"] is True
    assert obj["cohomology"]["dims"] == {
        "dolbeault": 4, "delJ": 4, "bott-chern": 5, "aeppli": 5}
    assert obj["jbar"]["dolbeault"]["real_dim_plus"] == 4
    assert obj["closed_nonexact_imaginary_dim"] == 4
    generators = obj["jbar"]["dolbeault"]["generators"]
    assert all(gen["closed"] for gen in generators)
    assert any(gen["exact"] and gen["primitive"] is not None
               for gen in generators)


def test_family_flag_equals_family_subcommand(invoke):
    out_flag, _ = invoke("analyze", "--family", "gt", "--param", "t=1/3",
                         "--format", "json")
    out_sub, _ = invoke("family", "gt", "--param", "t=1/3", "analyze",
                        "--format", "json")
    assert out_flag == out_sub


def test_flag_misuse_diagnostics(invoke, gt13_path):
    _, err = invoke("analyze", "--input", gt13_path, "--family", "gt",
                    expect=2)
    assert json.loads(err)["error"] == "BAD_PARAMETERS"

    _, err = invoke("analyze", expect=2)
    assert "no instance" in json.loads(err)["message"]

    _, err = invoke("family", "gt", "analyze", "--param", "t=2", expect=2)
    assert json.loads(err)["error"] == "BAD_PARAMETERS"

    _, err = invoke("family", "gt", "analyze", "--param", "t", expect=2)
    assert "NAME=VALUE" in json.loads(err)["message"]

    _, err = invoke("family", "gt", "analyze", "--param", "t=1/3",
                    "--param", "t=1/2", expect=2)
    assert "twice" in json.loads(err)["message"]

    _, err = invoke("cohomology", "--input", gt13_path, "--p", "9", expect=2)
    assert json.loads(err)["error"] == "DEGREE_OUT_OF_RANGE"


def test_sweep_table_and_grid_override(invoke):
    out, _ = invoke("sweep", "--family", "gt", "--format", "table")
    assert "law hkt-iff-t-one-half: holds" in out
    assert "all hold: true" in out

    out, _ = invoke("sweep", "--family", "gt", "--param", "t=1/5,2/5,3/5,4/5",
                    "--format", "json")
    obj = json.loads(out)
    assert obj["point_count"] == 4
    assert obj["grid"]["t"] == ["1/5", "2/5", "3/5", "4/5"]
    assert obj["all_hold"] is True


def test_sweep_deterministic_across_workers(invoke):
    argv = ("sweep", "--family", "nilpotent8", "--param", "t1=0,1",
            "--param", "t2=0,1", "--param", "t3=0", "--param", "t4=0",
            "--format", "json")
    serial, _ = invoke(*argv)
    parallel, _ = invoke(*argv, "--workers", "4")
    again, _ = invoke(*argv)
    assert serial == parallel == again


def test_tex_output_and_out_file(invoke, tmp_path):
    out_path = tmp_path / "sweep.tex"
    out, _ = invoke("sweep", "--family", "gt", "--format", "tex",
                    "--out", str(out_path))
    assert out == ""
    tex = out_path.read_text()
    assert r"\begin{tabular}" in tex and "hkt-iff-t-one-half" in tex

    out, _ = invoke("family", "gt", "--param", "t=1/3", "analyze",
                    "--format", "tex")
    assert r"$\dim H^{2,0}_{\partial}$ & 4" in out


def test_analyze_deterministic(invoke, gt13_path):
    first, _ = invoke("analyze", "--input", gt13_path, "--format", "json")
    second, _ = invoke("analyze", "--input", gt13_path, "--format", "json")
    assert first == second


def test_argparse_rejects_unknown_choices(capsys):
    with pytest.raises(SystemExit) as info:
        cli.run(["family", "nope", "analyze"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.run(["cohomology", "--input", "x.json", "--kind", "x"])
    assert info.value.code == 2
    capsys.readouterr()


def test_internal_invariant_breach_exits_one(invoke, monkeypatch, gt13_path):
    def explode(realized):
        raise InternalInvariantError("forced breach for the exit-code test")

    monkeypatch.setattr(cli, "validate_document", explode)
    _, err = invoke("validate", "--input", gt13_path, expect=1)
    assert json.loads(err)["error"] == "INTERNAL_INVARIANT"


def test_installed_script_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "hcforms.cli", "family", "gt",
         "--param", "t=1/2", "hkt"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr[:300]
    assert "hkt: true" in proc.stdout
