from __future__ import annotations

import orjson
from typer.testing import CliRunner

from laghom.cli.main import app
from laghom.io.files import ProblemFile, write_problem


runner = CliRunner()


def _problem_file(tmp_path, degree_one_instance, seed: int = 0):
    problem, c, u = degree_one_instance(seed)
    path = tmp_path / "problem.json"
    write_problem(path, ProblemFile.from_problem(problem, seed=seed))
    return path, c, u


def test_degree_command():
    result = runner.invoke(app, ["degree", "--degrees", "3", "--n", "6"])
    assert result.exit_code == 0
    assert "generic: 96" in result.output
    assert "refined: 96" in result.output


def test_degree_command_multiaffine_and_degree_one():
    result = runner.invoke(app, ["degree", "--multiaffine", "--n", "3"])
    assert result.exit_code == 0
    assert "multiaffine: 9" in result.output
    result = runner.invoke(app, ["degree", "--degrees", "1,2,2,2", "--format", "machine"])
    assert orjson.loads(result.stdout)["refined"] == 1


def test_degree_list_must_match_dimension():
    result = runner.invoke(app, ["degree", "--degrees", "2,3", "--n", "5"])
    assert result.exit_code != 0
    assert "refined" not in result.output
    result = runner.invoke(app, ["tropical-check", "--degrees", "2,3", "--n", "3"])
    assert result.exit_code != 0
    assert "PASS" not in result.output
    result = runner.invoke(app, ["degree", "--degrees", "2,3", "--n", "2"])
    assert result.exit_code == 0
    assert "refined: 4" in result.output


def test_tropical_check_passes():
    result = runner.invoke(app, ["tropical-check", "--degrees", "3", "--n", "4"])
    assert result.exit_code == 0
    assert "a = (1, 1, 1, 1), b = 0" in result.output
    assert "PASS" in result.output
    result = runner.invoke(app, ["tropical-check", "--degrees", "2,3,4"])
    assert result.exit_code == 0


def test_tropical_check_low_degree_needs_override():
    result = runner.invoke(app, ["tropical-check", "--degrees", "1,2"])
    assert result.exit_code == 1


def test_tropical_check_example():
    result = runner.invoke(app, ["tropical-check", "--example"])
    assert result.exit_code == 0
    assert "normal (-1/2, 1)" in result.output
    assert "normal (-1, 1)" in result.output
    assert result.output.count("root ") == 3


def test_solve_command(tmp_path, degree_one_instance, closed_form):
    path, c, u = _problem_file(tmp_path, degree_one_instance)
    out = tmp_path / "result.json"
    result = runner.invoke(app, ["solve", str(path), "--output", str(out), "--format", "machine"])
    assert result.exit_code == 0, result.output
    doc = orjson.loads(out.read_bytes())
    assert doc["expected_count"] == 1
    assert len(doc["points"]) == 1
    x1, x2, _ = closed_form(c, u)
    assert abs(doc["points"][0]["x_re"][0] - x1) < 1e-8 * (1 + abs(x1))
    assert abs(doc["points"][0]["x_re"][1] - x2) < 1e-8 * (1 + abs(x2))
    assert orjson.loads(result.stdout) == doc


def test_solve_table_output(tmp_path, degree_one_instance):
    path, _, _ = _problem_file(tmp_path, degree_one_instance, seed=1)
    result = runner.invoke(app, ["solve", str(path), "--threads", "1"])
    assert result.exit_code == 0
    assert "1 converged" in result.output


def test_solve_rejects_duplicate_rows(tmp_path):
    path = tmp_path / "dup.json"
    path.write_bytes(
        b'{"format": 1, "n": 1, "objective": [1.0], '
        b'"constraint": [{"exponents": [2], "re": 1.0}, {"exponents": [2], "re": 1.0}]}'
    )
    result = runner.invoke(app, ["solve", str(path)])
    assert result.exit_code == 1
    assert "duplicate" in result.output


def test_solve_support_violation_exits_1(tmp_path):
    pf = ProblemFile.model_validate(
        {
            "n": 2,
            "objective": [1.0, 1.0],
            "constraint": [
                {"exponents": [0, 0], "re": 1.0},
                {"exponents": [2, 0], "re": 1.0},
                {"exponents": [0, 2], "re": 1.0},
                {"exponents": [1, 2], "re": 1.0},
            ],
        }
    )
    path = tmp_path / "bad.json"
    write_problem(path, pf)
    result = runner.invoke(app, ["solve", str(path)])
    assert result.exit_code == 1


def test_bench_command(tmp_path):
    out = tmp_path / "bench.jsonl"
    result = runner.invoke(app, ["bench", "--d", "2", "--n-min", "2", "--n-max", "3", "--output", str(out)])
    assert result.exit_code == 0, result.output
    rows = [orjson.loads(line) for line in out.read_bytes().splitlines()]
    assert [r["n"] for r in rows] == [2, 3]
    assert all(r["expected_count"] == 2 and r["found"] == 2 for r in rows)
    assert all(r["oracle_found"] is None for r in rows)


def test_bench_with_oracle(tmp_path):
    out = tmp_path / "bench.jsonl"
    result = runner.invoke(app, ["bench", "--d", "2", "--n-min", "2", "--n-max", "2", "--oracle-max-paths", "8", "--output", str(out)])
    assert result.exit_code == 0, result.output
    row = orjson.loads(out.read_bytes().splitlines()[0])
    assert row["oracle_paths"] == 8
    assert row["oracle_found"] == 2


def test_bench_zero_repetitions(tmp_path):
    out = tmp_path / "bench.jsonl"
    result = runner.invoke(app, ["bench", "--repetitions", "0", "--output", str(out)])
    assert result.exit_code == 0
    assert out.read_bytes() == b""
