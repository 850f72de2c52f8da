"""HTTP endpoint contract."""

import pytest
from fastapi.testclient import TestClient

from ttstudio.graph import Graph, NodeKind
from ttstudio.graphio import graph_to_document
from ttstudio.grid import TimeGrid
from ttstudio.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def pair_doc(lecturer_pair_graph):
    return graph_to_document(lecturer_pair_graph), lecturer_pair_graph.ids


def test_health(client):
    r = client.get("/api/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_validate_link_accepted(client, lecturer_pair_graph):
    g = lecturer_pair_graph
    ta = g.add_node(NodeKind.TEACHING_ASSISTANT, "TA1")
    r = client.post(
        "/api/validate-link",
        json={"graph": graph_to_document(g), "a": ta, "b": g.ids["mt1"]},
    )
    assert r.status_code == 200
    assert r.json() == {"accepted": True}


def test_validate_link_rejected(client, pair_doc):
    doc, ids = pair_doc
    r = client.post(
        "/api/validate-link", json={"graph": doc, "a": ids["math"], "b": ids["ml1"]}
    )
    assert r.status_code == 200
    assert r.json() == {"accepted": False, "reason": "DuplicateLink"}


def test_validate_link_unknown_node(client, pair_doc):
    doc, ids = pair_doc
    r = client.post("/api/validate-link", json={"graph": doc, "a": "ghost", "b": ids["ml1"]})
    assert r.status_code == 400
    assert r.json()["code"] == "UnknownNode"


def test_validate_link_bad_document(client):
    r = client.post(
        "/api/validate-link", json={"graph": {"nodes": 5}, "a": "x", "b": "y"}
    )
    assert r.status_code == 400
    assert r.json()["code"] == "SyntaxError"


def test_validate_link_semantic_error(client):
    doc = {
        "nodes": [
            {"id": "a", "kind": "lecturer", "name": "A"},
            {"id": "b", "kind": "lecturer", "name": "B"},
        ],
        "links": [["a", "b"]],
    }
    r = client.post("/api/validate-link", json={"graph": doc, "a": "a", "b": "b"})
    assert r.status_code == 400
    assert r.json()["code"] == "SemanticError"


def test_malformed_body(client):
    r = client.post("/api/validate-link", json={"graph": {}})
    assert r.status_code == 400
    assert r.json()["code"] == "SyntaxError"


def test_compile_success(client, pair_doc):
    doc, _ = pair_doc
    r = client.post("/api/compile", json={"graph": doc})
    assert r.status_code == 200
    body = r.json()
    assert body["program"].endswith("labeling([ffc], L).\n")
    assert body["stats"] == {"vars": 4, "constraints": 3, "flags": 0}
    assert all(f["severity"] == "warning" for f in body["findings"])


def test_compile_static_error(client):
    g = Graph()
    lecturer = g.add_node(NodeKind.LECTURER, "L1", teaching_load=1)
    for i in range(2):
        ev = g.add_node(NodeKind.LECTURE, f"E{i}")
        g.request_link(lecturer, ev)
    r = client.post("/api/compile", json={"graph": graph_to_document(g)})
    assert r.status_code == 422
    body = r.json()
    assert body["code"] == "CompileError"
    assert any(f["code"] == "TEACHING_LOAD_EXCEEDED" for f in body["findings"])


def test_solve_roundtrip(client, pair_doc):
    doc, ids = pair_doc
    r = client.post("/api/solve", json={"graph": doc, "time_limit_ms": 5000})
    assert r.status_code == 200
    body = r.json()
    assert body["status"] in ("optimal", "feasible")
    assert body["solutions"]
    assignment = body["solutions"][-1]["assignment"]
    assert set(assignment) == {ids["ml1"], ids["mt1"], ids["mt2"], ids["pl1"]}
    assert assignment[ids["ml1"]] != assignment[ids["pl1"]]
    assert body["grids"]
    lecturer_grid = next(g for g in body["grids"] if g["resource"] == "Lecturer1")
    placed = [name for day in lecturer_grid["cells"] for cell in day for name in cell]
    assert sorted(placed) == ["MATHL1", "PHYSICSL1"]
    assert set(body["stats"]) == {
        "nodes_explored",
        "failures",
        "elapsed",
        "proven_optimal",
    }


def test_solve_without_objective_returns_one_solution(client, pair_doc):
    doc, _ = pair_doc
    r = client.post("/api/solve", json={"graph": doc})
    assert r.status_code == 200
    assert len(r.json()["solutions"]) == 1


def test_solve_unsat(client):
    g = Graph(TimeGrid.of(1, 1))
    lecturer = g.add_node(NodeKind.LECTURER, "L1")
    for i in range(2):
        ev = g.add_node(NodeKind.LECTURE, f"E{i}")
        g.request_link(lecturer, ev)
    r = client.post("/api/solve", json={"graph": graph_to_document(g)})
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "unsat"
    assert body["solutions"] == []
    assert body["grids"] == []


def test_solve_compile_error(client):
    g = Graph()
    lecturer = g.add_node(NodeKind.LECTURER, "L1", teaching_load=0)
    ev = g.add_node(NodeKind.LECTURE, "E0")
    g.request_link(lecturer, ev)
    r = client.post("/api/solve", json={"graph": graph_to_document(g)})
    assert r.status_code == 422
    assert r.json()["code"] == "CompileError"


def test_solve_time_limit_capped():
    app = create_app(max_time_limit_ms=1)
    client = TestClient(app)
    g = Graph()
    lecturer = g.add_node(NodeKind.LECTURER, "L1")
    for i in range(8):
        ev = g.add_node(NodeKind.LECTURE, f"E{i}")
        g.request_link(lecturer, ev)
    r = client.post(
        "/api/solve", json={"graph": graph_to_document(g), "time_limit_ms": 600000}
    )
    assert r.status_code == 200


def test_solve_rejects_zero_time_limit(client, pair_doc):
    doc, _ = pair_doc
    r = client.post("/api/solve", json={"graph": doc, "time_limit_ms": 0})
    assert r.status_code == 400
    assert r.json()["code"] == "SyntaxError"


def test_cors_allows_cross_origin_pages(client):
    r = client.get("/api/health", headers={"Origin": "http://localhost:8080"})
    assert r.headers["access-control-allow-origin"] == "*"
    pre = client.options(
        "/api/compile",
        headers={
            "Origin": "http://localhost:8080",
            "Access-Control-Request-Method": "POST",
        },
    )
    assert pre.status_code == 200
    assert "POST" in pre.headers["access-control-allow-methods"]
