"""End-to-end runs of the command line interface."""

import json

import pytest

from ttstudio.cli import main
from ttstudio.graph import Graph, NodeKind
from ttstudio.graphio import serialize_graph
from ttstudio.grid import TimeGrid


@pytest.fixture
def pair_file(lecturer_pair_graph, tmp_path):
    path = tmp_path / "pair.json"
    path.write_bytes(serialize_graph(lecturer_pair_graph))
    return path, lecturer_pair_graph


def test_check_ok(pair_file, capsys):
    path, _ = pair_file
    assert main(["check", str(path)]) == 0
    out = capsys.readouterr().out
    assert "warning UNLINKED_EVENT" in out


def test_check_clean_graph(tmp_path, capsys):
    g = Graph()
    lecturer = g.add_node(NodeKind.LECTURER, "L1")
    ev = g.add_node(NodeKind.LECTURE, "E1")
    g.request_link(lecturer, ev)
    path = tmp_path / "g.json"
    path.write_bytes(serialize_graph(g))
    assert main(["check", str(path)]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_check_error_finding(tmp_path, capsys):
    g = Graph()
    lecturer = g.add_node(NodeKind.LECTURER, "L1", teaching_load=0)
    ev = g.add_node(NodeKind.LECTURE, "E1")
    g.request_link(lecturer, ev)
    path = tmp_path / "g.json"
    path.write_bytes(serialize_graph(g))
    assert main(["check", str(path)]) == 1
    assert "error TEACHING_LOAD_EXCEEDED" in capsys.readouterr().out


def test_compile_to_stdout(pair_file, capsys):
    path, _ = pair_file
    assert main(["compile", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("domain(")
    assert out.endswith("labeling([ffc], L).\n")


def test_compile_to_file(pair_file, tmp_path, capsys):
    path, _ = pair_file
    out_path = tmp_path / "program.ctr"
    assert main(["compile", str(path), "-o", str(out_path)]) == 0
    assert capsys.readouterr().out == ""
    assert out_path.read_text().endswith("labeling([ffc], L).\n")


def test_solve_and_render(pair_file, tmp_path, capsys):
    path, graph = pair_file
    sol_path = tmp_path / "solution.json"
    assert main(["solve", str(path), "--out", str(sol_path)]) == 0
    out = capsys.readouterr().out
    assert "status: feasible" in out
    doc = json.loads(sol_path.read_text())
    events = {n.id for n in graph.nodes if n.kind.is_event}
    assert set(doc["assignments"]) == events
    assert doc["score"] == 0
    assert set(doc["stats"]) == {"nodes_explored", "failures", "elapsed", "proven_optimal"}

    assert main(["render", str(path), str(sol_path)]) == 0
    rendered = capsys.readouterr().out
    assert "Lecturer1" in rendered
    assert "MATHL1" in rendered


def test_solve_optimizing_status(tmp_path, capsys):
    g = Graph(TimeGrid.of(2, 2))
    lecturer = g.add_node(NodeKind.LECTURER, "L1")
    ev = g.add_node(NodeKind.LECTURE, "E1")
    g.request_link(lecturer, ev)
    g.add_wish(lecturer, 0, "soft")
    path = tmp_path / "g.json"
    path.write_bytes(serialize_graph(g))
    assert main(["solve", str(path)]) == 0
    out = capsys.readouterr().out
    assert "status: optimal" in out
    assert "score: 1" in out


def test_solve_no_optimize_takes_first(tmp_path, capsys):
    g = Graph(TimeGrid.of(2, 2))
    lecturer = g.add_node(NodeKind.LECTURER, "L1")
    ev = g.add_node(NodeKind.LECTURE, "E1")
    g.request_link(lecturer, ev)
    g.add_wish(lecturer, 0, "soft")
    path = tmp_path / "g.json"
    path.write_bytes(serialize_graph(g))
    assert main(["solve", str(path), "--no-optimize"]) == 0
    out = capsys.readouterr().out
    assert "status: feasible" in out
    assert "solutions: 1" in out


def test_solve_unsat_exits_zero(tmp_path, capsys):
    g = Graph(TimeGrid.of(1, 1))
    lecturer = g.add_node(NodeKind.LECTURER, "L1")
    for i in range(2):
        ev = g.add_node(NodeKind.LECTURE, f"E{i}")
        g.request_link(lecturer, ev)
    path = tmp_path / "g.json"
    path.write_bytes(serialize_graph(g))
    sol_path = tmp_path / "solution.json"
    assert main(["solve", str(path), "--out", str(sol_path)]) == 0
    captured = capsys.readouterr()
    assert "status: unsat" in captured.out
    assert not sol_path.exists()
    assert "no solution" in captured.err


def test_gen_writes_graph(tmp_path, capsys):
    out_path = tmp_path / "gen.json"
    assert (
        main(
            [
                "gen",
                "--seed",
                "1",
                "--courses",
                "2",
                "--wishes",
                "2",
                "-o",
                str(out_path),
            ]
        )
        == 0
    )
    assert "gen.json" in capsys.readouterr().out
    doc = json.loads(out_path.read_text())
    assert len(doc["nodes"]) == 9
    assert len(doc["wishes"]) == 2
    assert main(["check", str(out_path)]) == 0


def test_gen_infeasible(tmp_path, capsys):
    out_path = tmp_path / "gen.json"
    code = main(["gen", "--courses", "1", "--tas", "0", "-o", str(out_path)])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_io_error(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "absent.json")]) == 2
    assert "error:" in capsys.readouterr().err


def test_bad_json_is_domain_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    assert main(["check", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_bad_solution_file(pair_file, tmp_path, capsys):
    path, _ = pair_file
    sol = tmp_path / "sol.json"
    sol.write_text(json.dumps({"assignments": {"n3": "late"}}))
    assert main(["render", str(path), str(sol)]) == 1
    assert "assignments" in capsys.readouterr().err


def test_usage_error(capsys):
    assert main(["solve"]) == 2
    assert main(["frobnicate"]) == 2


def test_zero_time_limit_is_usage_error(pair_file, capsys):
    path, _ = pair_file
    assert main(["solve", str(path), "--time-limit", "0"]) == 2
