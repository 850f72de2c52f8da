"""HTTP facade over validation, compilation and solving.

Every call carries the full graph document, so the service holds no
session state and any instance can answer any request.

Error bodies share one envelope: {"code", "message"} plus optional
extra fields (compile failures attach "findings").  Codes:

  SyntaxError    malformed body or graph document        (400)
  SemanticError  well-formed document, illegal content   (400)
  UnknownNode    validate-link endpoint got a bad id     (400)
  CompileError   static checks block compilation         (422)
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .compiler import CompileError, compile_graph, static_checks
from .emitter import emit
from .graph import Graph, LinkRejection
from .graphio import GraphSemanticError, GraphSyntaxError, graph_from_document
from .solver import SolverConfig, solve
from .timetable import grid_to_json, render_grids

DEFAULT_TIME_LIMIT_MS = 30_000


class _Rejected(Exception):
    """Carries a ready error response out of a handler."""

    def __init__(self, status: int, code: str, message: str, **extra):
        super().__init__(message)
        self.status = status
        self.body = {"code": code, "message": message, **extra}


class ValidateLinkRequest(BaseModel):
    graph: dict
    a: str
    b: str


class CompileRequest(BaseModel):
    graph: dict


class SolveRequest(BaseModel):
    graph: dict
    time_limit_ms: int | None = Field(default=None, ge=1)
    max_solutions: int | None = Field(default=None, ge=1)


def _parse(document: dict) -> Graph:
    try:
        return graph_from_document(document)
    except GraphSyntaxError as exc:
        raise _Rejected(400, "SyntaxError", str(exc)) from exc
    except GraphSemanticError as exc:
        raise _Rejected(400, "SemanticError", str(exc)) from exc


def _compile(graph: Graph):
    try:
        return compile_graph(graph)
    except CompileError as exc:
        raise _Rejected(
            422,
            "CompileError",
            str(exc),
            findings=[dataclasses.asdict(f) for f in exc.findings],
        ) from exc


def create_app(max_time_limit_ms: int = DEFAULT_TIME_LIMIT_MS) -> FastAPI:
    app = FastAPI(title="ttstudio")

    # the browser studio may be served from a different origin than the API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(_Rejected)
    async def _rejected(request: Request, exc: _Rejected):
        return JSONResponse(status_code=exc.status, content=exc.body)

    @app.exception_handler(RequestValidationError)
    async def _bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "SyntaxError", "message": "malformed request body"},
        )

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.post("/api/validate-link")
    async def validate_link(req: ValidateLinkRequest):
        graph = _parse(req.graph)
        rejection = graph.check_link(req.a, req.b)
        if rejection is LinkRejection.UNKNOWN_NODE:
            raise _Rejected(400, "UnknownNode", f"unknown node id in ({req.a}, {req.b})")
        if rejection is None:
            return {"accepted": True}
        return {"accepted": False, "reason": rejection.value}

    @app.post("/api/compile")
    async def compile_endpoint(req: CompileRequest):
        graph = _parse(req.graph)
        model = _compile(graph)
        program = emit(model)
        return {
            "program": program.text,
            "findings": [dataclasses.asdict(f) for f in static_checks(graph)],
            "stats": {
                "vars": len(model.variables),
                "constraints": len(model.constraints),
                "flags": len(model.flags),
            },
        }

    @app.post("/api/solve")
    async def solve_endpoint(req: SolveRequest):
        graph = _parse(req.graph)
        model = _compile(graph)
        limit_ms = min(req.time_limit_ms or max_time_limit_ms, max_time_limit_ms)
        max_solutions = req.max_solutions
        if max_solutions is None and model.objective is None:
            # nothing to optimize: enumerating every timetable helps nobody
            max_solutions = 1
        result = solve(
            model,
            SolverConfig(time_limit=limit_ms / 1000.0, max_solutions=max_solutions),
        )
        grids = []
        if result.solutions:
            grids = [
                grid_to_json(wg)
                for wg in render_grids(result.best.assignment, graph)
            ]
        return {
            "status": result.status,
            "solutions": [
                {"assignment": s.assignment, "score": s.score} for s in result.solutions
            ],
            "grids": grids,
            "stats": dataclasses.asdict(result.stats),
        }

    return app
