import io
import json
import math

import pytest

from leibniz.cli import EXIT_INPUT, EXIT_NO_CONVERGENCE, EXIT_OK, EXIT_VIOLATION, main

from conftest import DATA, GOLDEN

GOLDEN_CASES = {
    "verify_triangle_345": ["verify", "--input", str(DATA / "triangle_345.json")],
    "verify_segment": ["verify", "--input", str(DATA / "segment.json")],
    "report_triangle_345": ["report", "--input", str(DATA / "triangle_345.json")],
    "report_regular_tetrahedron": ["report", "--input", str(DATA / "regular_tetrahedron.json")],
    "report_noncospherical_quad": ["report", "--input", str(DATA / "noncospherical_quad.json")],
    "report_equilateral_csv": ["report", "--input", str(DATA / "equilateral.csv")],
    "fuzz_small": ["fuzz", "--count", "20", "--max-n", "6", "--max-d", "3", "--seed", "5"],
    "search_3_2": ["search", "--n", "3", "--dim", "2", "--seed", "0"],
}


def run_cli(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def assert_matches(actual, expected, path="$"):
    """Structure and non-numeric leaves exact; numbers to 1e-12 relative."""
    assert type(actual) is type(expected), path
    if isinstance(expected, dict):
        assert list(actual) == list(expected), path
        for key in expected:
            assert_matches(actual[key], expected[key], f"{path}.{key}")
    elif isinstance(expected, list):
        assert len(actual) == len(expected), path
        for k, (a, e) in enumerate(zip(actual, expected)):
            assert_matches(a, e, f"{path}[{k}]")
    elif isinstance(expected, float):
        assert math.isclose(actual, expected, rel_tol=1e-12, abs_tol=1e-12), (path, actual, expected)
    else:
        assert actual == expected, path


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys, update_golden):
    code, out, _ = run_cli(capsys, GOLDEN_CASES[name] + ["--json"])
    assert code == EXIT_OK
    path = GOLDEN / f"{name}.json"
    if update_golden:
        path.write_text(out)
    assert_matches(json.loads(out), json.loads(path.read_text()))


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_is_byte_identical_across_runs(name, capsys):
    argv = GOLDEN_CASES[name] + ["--json"]
    first = run_cli(capsys, argv)
    second = run_cli(capsys, argv)
    assert first == second


class TestExitCodes:
    def test_verify_ok(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--input", str(DATA / "triangle_345.json")])
        assert code == EXIT_OK
        assert "PASSED" in out

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("0,0\n4,0\n0,3\n"))
        code, out, _ = run_cli(capsys, ["report", "--json"])
        assert code == EXIT_OK
        assert json.loads(out)["pairwise_sq_sum"] == 50

    @pytest.mark.parametrize("text", ['{"points": [[1, 2]]}', "", "0,0\n1,x\n", "[1, 2]"])
    def test_bad_document(self, capsys, monkeypatch, text):
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, out, err = run_cli(capsys, ["verify"])
        assert code == EXIT_INPUT
        assert out == ""
        assert "error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, ["report", "--input", str(tmp_path / "nope.json")])
        assert code == EXIT_INPUT
        assert "cannot read" in err

    @pytest.mark.parametrize("argv", [[], ["bogus"], ["verify", "--tol", "0"], ["fuzz", "--seed", "-1"],
                                      ["search", "--radius", "-2"], ["search", "--n", "1"]])
    def test_bad_arguments(self, capsys, argv):
        assert run_cli(capsys, argv)[0] == EXIT_INPUT

    def test_help_is_success(self, capsys):
        assert run_cli(capsys, ["--help"])[0] == EXIT_OK

    def test_corrupted_oracle_is_caught(self, capsys):
        code, out, _ = run_cli(capsys, ["fuzz", "--count", "4", "--corrupt-oracle"])
        assert code == EXIT_VIOLATION
        assert "VIOLATION" in out
        assert "--start" in out

    def test_violation_replay_reproduces_the_failure(self, capsys):
        _, out, _ = run_cli(capsys, ["fuzz", "--count", "6", "--seed", "9", "--corrupt-oracle", "--json"])
        violations = json.loads(out)["violations"]
        assert violations
        v = violations[-1]
        code, out, _ = run_cli(capsys, ["fuzz", "--count", "1", "--seed", "9", "--start", str(v["index"]),
                                        "--corrupt-oracle", "--json"])
        assert code == EXIT_VIOLATION
        replay = [w for w in json.loads(out)["violations"] if w["invariant"] == v["invariant"]]
        assert replay and replay[0]["detail"] == v["detail"]

    def test_minimal_fuzz(self, capsys):
        code, out, _ = run_cli(capsys, ["fuzz", "--count", "1", "--max-n", "2", "--json"])
        assert code == EXIT_OK
        assert json.loads(out)["violations"] == []

    def test_search_non_convergence(self, capsys):
        code, out, _ = run_cli(capsys, ["search", "--n", "8", "--dim", "4", "--max-iters", "2", "--restarts", "1", "--json"])
        assert code == EXIT_NO_CONVERGENCE
        res = json.loads(out)
        assert not res["converged"]
        assert res["best_value"] <= res["bound"]

    def test_search_text(self, capsys):
        code, out, _ = run_cli(capsys, ["search", "--n", "4", "--dim", "3"])
        assert code == EXIT_OK
        assert "converged=True" in out


class TestReportContent:
    def test_noncospherical_warns(self, capsys):
        code, out, _ = run_cli(capsys, ["report", "--input", str(DATA / "noncospherical_quad.json"), "--json"])
        rep = json.loads(out)
        assert code == EXIT_OK
        assert "sphere" not in rep and "bounds" not in rep
        assert any("sphere" in w for w in rep["warnings"])

    def test_regular_tetrahedron(self, capsys):
        _, out, _ = run_cli(capsys, ["report", "--input", str(DATA / "regular_tetrahedron.json"), "--json"])
        rep = json.loads(out)
        assert rep["sphere"]["regular"] is True
        assert all(c["equality"] for c in rep["bounds"])
        assert all(c["equality"] for c in rep["simplex"]["bounds"])

    def test_derived_query_point_is_stable(self, capsys):
        _, out, _ = run_cli(capsys, ["verify", "--input", str(DATA / "equilateral.csv"), "--json"])
        first = json.loads(out)["identity"][0]
        assert first["label"] == "derived"
        _, out, _ = run_cli(capsys, ["verify", "--input", str(DATA / "equilateral.csv"), "--json"])
        assert json.loads(out)["identity"][0]["point"] == first["point"]
