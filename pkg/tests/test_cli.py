import json

import pytest

from indexcode.cli import main
from indexcode.fixtures import fixture_text
from indexcode.problem import parse_problem


@pytest.fixture
def fixture_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(fixture_text(name))
        return str(path)

    return write


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_analyze_ex_inf(fixture_file, capsys):
    rc, out, _ = run(capsys, "analyze", fixture_file("ex_inf"))
    assert rc == 0
    assert "rate 1/3: infeasible" in out
    assert "type-2 set {1, 2, 3, 4}" in out
    assert "{1, 3}" in out


def test_analyze_ex_feas_undetermined(fixture_file, capsys):
    rc, out, _ = run(capsys, "analyze", fixture_file("ex_feas"))
    assert rc == 0
    assert "undetermined" in out
    assert "conjecture predicts feasible" in out


def test_analyze_conflict_free(tmp_path, capsys):
    path = tmp_path / "free.json"
    path.write_text(
        '{"n": 2, "receivers": ['
        '{"demands": [1], "side_info": [2]},'
        '{"demands": [2], "side_info": [1]}]}'
    )
    rc, out, _ = run(capsys, "analyze", str(path))
    assert rc == 0
    assert "rate 1:   feasible" in out
    assert "rate 1/2: feasible" in out
    assert "rate 1/3: feasible" in out


def test_analyze_json_deterministic(fixture_file, capsys):
    path = fixture_file("ex_inf")
    rc1, out1, _ = run(capsys, "analyze", path, "--format", "json")
    rc2, out2, _ = run(capsys, "analyze", path, "--format", "json")
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert json.loads(out1)["rate_1_3"]["status"] == "infeasible-dirty-type2"


def test_analyze_emit_graph(fixture_file, tmp_path, capsys):
    dot = tmp_path / "g.dot"
    rc, _, _ = run(capsys, "analyze", fixture_file("ex_feas"), "--emit-graph", str(dot))
    assert rc == 0
    assert dot.read_text().startswith("graph")


def test_construct_verify_roundtrip(fixture_file, tmp_path, capsys):
    problem_path = fixture_file("p5")
    code_path = str(tmp_path / "p5.code")
    rc, _, err = run(
        capsys, "construct", problem_path, "--rate", "1/3", "--seed", "7", "-o", code_path
    )
    assert rc == 0
    assert "attempts_used: 1" in err
    rc, out, _ = run(capsys, "verify", problem_path, code_path)
    assert rc == 0
    assert out.strip() == "OK (5/5 receivers)"


def test_construct_deterministic_output(fixture_file, tmp_path, capsys):
    problem_path = fixture_file("p5")
    paths = [str(tmp_path / f"c{i}.code") for i in (1, 2)]
    for path in paths:
        rc, _, _ = run(capsys, "construct", problem_path, "--rate", "1/3", "--seed", "7", "-o", path)
        assert rc == 0
    with open(paths[0]) as a, open(paths[1]) as b:
        assert a.read() == b.read()


def test_construct_precondition_exit_code(fixture_file, capsys):
    rc, _, err = run(capsys, "construct", fixture_file("ex_inf"), "--rate", "1/3", "--seed", "1")
    assert rc == 4
    assert "precondition" in err


def test_construct_exhausted_exit_code(tmp_path, capsys):
    path = tmp_path / "pigeon.json"
    receivers = [
        {"demands": [a], "side_info": [m for m in range(1, 5) if m not in (a, b)]}
        for a in range(1, 5)
        for b in range(1, 5)
        if a != b
    ]
    path.write_text(json.dumps({"n": 4, "receivers": receivers}))
    rc, _, err = run(
        capsys, "construct", str(path), "--rate", "1/2", "--prime", "2", "--seed", "0"
    )
    assert rc == 5
    assert "attempts" in err


def test_verify_reports_violations(fixture_file, tmp_path, capsys):
    code_path = tmp_path / "bad.code"
    code_path.write_text(
        json.dumps({"length": 3, "prime": 5, "vectors": [[1, 0, 0]] * 6})
    )
    rc, out, _ = run(capsys, "verify", fixture_file("ex_feas"), str(code_path))
    assert rc == 0
    assert "VIOLATION" in out
    assert "FAILED" in out


def test_oracle_command_ex_inf(fixture_file, capsys):
    rc, out, _ = run(capsys, "oracle", fixture_file("ex_inf"), "--q", "2,3", "--max-len", "4")
    assert rc == 0
    assert "min length: 4 (q=2), 4 (q=3)" in out
    assert "field-relative" in out


def test_oracle_witness_output(fixture_file, tmp_path, capsys):
    out_path = str(tmp_path / "w.code")
    rc, out, _ = run(
        capsys, "oracle", fixture_file("ex_feas"), "--q", "2", "--max-len", "3", "-o", out_path
    )
    assert rc == 0
    assert "min length: 3 (q=2)" in out
    rc, out, _ = run(capsys, "verify", fixture_file("ex_feas"), out_path)
    assert rc == 0
    assert out.startswith("OK")


def test_gen_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "gen.json"
    rc, _, _ = run(capsys, "gen", "-n", "5", "--density", "0.5", "--seed", "3", "-o", str(out_path))
    assert rc == 0
    p = parse_problem(out_path.read_text())
    assert p.n == 5
    rc, out, _ = run(capsys, "analyze", str(out_path))
    assert rc == 0


def test_bad_input_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "receivers": [{"demands": [1], "side_info": [1]}]}')
    rc, _, err = run(capsys, "analyze", str(path))
    assert rc == 3
    assert "error" in err


def test_missing_file_exit_code(capsys):
    rc, _, _ = run(capsys, "analyze", "/nonexistent/problem.json")
    assert rc == 3


def test_usage_error_exit_code(capsys):
    rc, _, _ = run(capsys, "construct", "--rate")
    assert rc == 2


def test_allow_undemanded_flag(tmp_path, capsys):
    path = tmp_path / "u.json"
    path.write_text('{"n": 2, "receivers": [{"demands": [1], "side_info": []}]}')
    rc, _, _ = run(capsys, "analyze", str(path))
    assert rc == 3
    rc, _, _ = run(capsys, "analyze", str(path), "--allow-undemanded")
    assert rc == 0
