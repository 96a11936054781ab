import json
from io import StringIO

import pytest

from tcoi.cli import (
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PRECONDITION,
    EXIT_VERIFY_FAILED,
    SCHEMA_VERSION,
    WORKERS_ENV,
    main,
)
from tcoi.graph import cycle_graph, path_graph
from tcoi.io import from_graph6, read_graph, to_graph6, write_graph


def run(*argv):
    out = StringIO()
    code = main([str(a) for a in argv], out=out)
    lines = [json.loads(line) for line in out.getvalue().splitlines()]
    assert all(rec["schema_version"] == SCHEMA_VERSION for rec in lines)
    return code, lines


@pytest.fixture
def p4(tmp_path):
    path = tmp_path / "p4.txt"
    write_graph(path_graph(4), path)
    return path


def test_compute_reports_all_four_values(p4):
    code, [rec] = run("compute", p4)
    assert code == EXIT_OK
    values = {k: v["value"] for k, v in rec["results"].items()}
    assert values == {"gamma_t": 2, "gamma_tcoi": 2, "alpha": 2, "beta": 2}
    assert rec["graph6"] == to_graph6(path_graph(4))


def test_compute_oracle_flag(p4):
    code, [rec] = run("compute", "--oracle", p4)
    assert code == EXIT_OK
    assert {v["method"] for v in rec["results"].values()} == {"brute_force"}


def test_compute_is_deterministic(p4):
    assert run("compute", p4) == run("compute", p4)


def test_worker_pool_keeps_input_order(tmp_path, monkeypatch):
    path = tmp_path / "many.g6"
    graphs = [path_graph(n) for n in range(3, 9)] + [cycle_graph(n) for n in range(3, 9)]
    path.write_text("".join(to_graph6(g) + "\n" for g in graphs))
    _, serial = run("compute", path)
    monkeypatch.setenv(WORKERS_ENV, "2")
    code, parallel = run("compute", path)
    assert code == EXIT_OK
    assert parallel == serial
    assert [rec["index"] for rec in parallel] == list(range(len(graphs)))


def test_p2_is_infeasible_but_other_values_are_reported(tmp_path):
    path = tmp_path / "p2.txt"
    write_graph(path_graph(2), path)
    code, [rec] = run("compute", path)
    assert code == EXIT_INFEASIBLE
    assert rec["errors"]["gamma_tcoi"]["kind"] == "infeasible"
    assert rec["results"]["gamma_t"]["value"] == 2


def test_isolated_vertex_is_a_precondition_failure(tmp_path):
    path = tmp_path / "iso.txt"
    path.write_text("3 1\n0 1\n")
    code, [rec] = run("compute", path)
    assert code == EXIT_PRECONDITION
    assert rec["errors"]["gamma_t"]["kind"] == "isolated_vertex"


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n")
    code, [rec] = run("compute", path)
    assert code == EXIT_PARSE
    assert rec["error"]["kind"] == "parse"
    assert run("compute", tmp_path / "missing.txt")[0] == EXIT_PARSE


def test_bounds_command(p4):
    code, [rec] = run("bounds", p4)
    assert code == EXIT_OK and rec["holds"]
    assert "cover_upper" in [b["name"] for b in rec["bounds"]]


def test_gen_f1_with_outputs(tmp_path):
    out, dot, script = tmp_path / "g.g6", tmp_path / "g.dot", tmp_path / "g.script"
    code, [rec] = run("gen", "f1", "--n", 1, "--a", 1, "--b", 1, "--k", 2, "--q", 0,
                      "--out", out, "--dot", dot, "--script-out", script, "--verify")
    assert code == EXIT_OK
    assert rec["n"] == 4 and rec["verify"]["holds"]
    assert read_graph(out).n == 4
    assert dot.read_text().startswith("graph ")
    code, [again] = run("replay", script)
    assert code == EXIT_OK and again["graph6"] == rec["graph6"]


def test_gen_f2_repeated_path_inflations():
    code, [rec] = run("gen", "f2", "--t", "4,2,0", "--step-b", "2:3:1", "--c", "2,1,1", "--verify")
    assert code == EXIT_OK
    assert rec["n"] == 15 and rec["verify"]["holds"]


def test_gen_f2_rejected_parameters():
    code, [rec] = run("gen", "f2", "--t", "0,0,0")
    assert code == EXIT_PRECONDITION
    assert "error" in rec


def test_gen_qr_and_tree_family():
    code, [rec] = run("gen", "qr", "--r", 3)
    assert code == EXIT_OK and rec["n"] == 9
    code, lines = run("gen", "f", "--max-n", 6)
    assert code == EXIT_OK
    assert len(lines) == 1 + 2 + 5


def test_reduce(p4, tmp_path):
    code, [rec] = run("reduce", p4, "--verify", "--k", 2, "--dot", tmp_path / "gt.dot")
    assert code == EXIT_OK
    assert rec["reduced_n"] == 28
    assert rec["verify"]["holds"] and rec["decision"] == {"k": 2, "j": 10, "equivalent": True}
    assert from_graph6(rec["reduced_graph6"]).n == 28


def test_reduce_rejects_edgeless_input(tmp_path):
    path = tmp_path / "e.txt"
    path.write_text("3 0\n")
    assert run("reduce", path)[0] == EXIT_PRECONDITION


def test_trees_commands(tmp_path):
    p8 = tmp_path / "p8.txt"
    write_graph(path_graph(8), p8)
    code, [rec] = run("trees", "check", p8)
    assert code == EXIT_OK and rec["in_t_gamma_t"] is False
    code, [rec] = run("trees", "recognize", p8)
    assert rec["member"] is False

    p7 = tmp_path / "p7.txt"
    script = tmp_path / "p7.script"
    write_graph(path_graph(7), p7)
    code, [rec] = run("trees", "recognize", p7, "--script-out", script)
    assert rec["member"] is True
    code, [again] = run("replay", script)
    assert code == EXIT_OK and again["kind"] == "tree_ops" and again["n"] == 7


def test_trees_check_rejects_non_trees(tmp_path):
    path = tmp_path / "c5.txt"
    write_graph(cycle_graph(5), path)
    assert run("trees", "check", path)[0] == EXIT_PRECONDITION


def test_verify_characterization_small_and_failing_range():
    code, [rec] = run("trees", "verify-characterization", "--max-n", 8)
    assert code == EXIT_OK and rec["ok"]
    code, [rec] = run("trees", "verify-characterization", "--max-n", 9)
    assert code == EXIT_VERIFY_FAILED and rec["disagreements"]


def test_replay_parse_error(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("base P4\nF7 0\n")
    code, [rec] = run("replay", path)
    assert code == EXIT_PARSE
