"""Command line front end.

Exit codes: 0 success (an unsatisfiable instance is still a successful
run), 1 for domain errors in the input (bad documents, illegal graphs,
static check failures), 2 for usage and IO errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .compiler import CompileError, compile_graph, static_checks
from .emitter import emit
from .generator import GeneratorSpec, InfeasibleSpec, gen_instance
from .graph import GraphError
from .graphio import GraphSemanticError, GraphSyntaxError, parse_graph, serialize_graph
from .grid import OutOfRangeError
from .solver import SolverConfig, solve
from .timetable import MissingAssignment, grid_to_text, render_grids

class SolutionFileError(ValueError):
    """solution.json does not hold an event-to-slot assignment."""


_DOMAIN_ERRORS = (
    GraphError,
    GraphSyntaxError,
    GraphSemanticError,
    CompileError,
    InfeasibleSpec,
    OutOfRangeError,
    MissingAssignment,
    SolutionFileError,
)


def _read_graph(path: str):
    return parse_graph(Path(path).read_bytes())


def _read_solution(path: str) -> dict[str, int]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SolutionFileError(f"{path}: {exc}") from exc
    assignments = doc.get("assignments") if isinstance(doc, dict) else None
    if not isinstance(assignments, dict) or not all(
        isinstance(k, str) and isinstance(v, int) for k, v in assignments.items()
    ):
        raise SolutionFileError(f"{path}: expected an object with assignments")
    return assignments


def _cmd_check(args) -> int:
    graph = _read_graph(args.graph)
    findings = static_checks(graph)
    for f in findings:
        print(f"{f.severity} {f.code} {f.node}: {f.message}")
    if any(f.severity == "error" for f in findings):
        return 1
    if not findings:
        print("ok")
    return 0


def _cmd_compile(args) -> int:
    program = emit(compile_graph(_read_graph(args.graph)))
    if args.output:
        Path(args.output).write_text(program.text)
    else:
        sys.stdout.write(program.text)
    return 0


def _cmd_solve(args) -> int:
    model = compile_graph(_read_graph(args.graph))
    max_solutions = args.max_solutions
    optimizing = not args.no_optimize and model.objective is not None
    if max_solutions is None and not optimizing:
        max_solutions = 1
    config = SolverConfig(
        time_limit=args.time_limit / 1000.0 if args.time_limit else None,
        max_solutions=max_solutions,
        optimize=False if args.no_optimize else None,
    )
    result = solve(model, config)
    print(f"status: {result.status}")
    if result.solutions:
        best = result.best
        print(f"score: {best.score}")
        print(f"solutions: {len(result.solutions)}")
    stats = result.stats
    print(
        f"nodes: {stats.nodes_explored}  failures: {stats.failures}"
        f"  elapsed: {stats.elapsed:.3f}s"
    )
    if args.out:
        if result.solutions:
            best = result.best
            doc = {
                "assignments": best.assignment,
                "score": best.score,
                "stats": dataclasses.asdict(result.stats),
            }
            Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
        else:
            print("no solution to write", file=sys.stderr)
    return 0


def _cmd_render(args) -> int:
    graph = _read_graph(args.graph)
    assignments = _read_solution(args.solution)
    texts = [grid_to_text(wg) for wg in render_grids(assignments, graph)]
    sys.stdout.write("\n".join(texts))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(
        seed=args.seed,
        courses=args.courses,
        groups=args.groups,
        lecturers=args.lecturers,
        tas=args.tas,
        tutorials_per_course=args.tutorials_per_course,
        wishes=args.wishes,
    )
    graph = gen_instance(spec)
    Path(args.output).write_bytes(serialize_graph(graph))
    print(f"wrote {args.output} ({len(graph.nodes)} nodes, {len(graph.links)} links)")
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ttstudio")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a graph document and list findings")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("compile", help="emit the constraint program")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("solve", help="search for a timetable")
    p.add_argument("graph")
    p.add_argument("--time-limit", type=_positive, metavar="MS")
    p.add_argument("--max-solutions", type=_positive, metavar="N")
    p.add_argument("--no-optimize", action="store_true")
    p.add_argument("--out", metavar="SOLUTION_JSON")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("render", help="print weekly grids for a solved instance")
    p.add_argument("graph")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("gen", help="generate a synthetic instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--courses", type=int, default=1)
    p.add_argument("--groups", type=int, default=1)
    p.add_argument("--lecturers", type=int, default=1)
    p.add_argument("--tas", type=int, default=1)
    p.add_argument("--tutorials-per-course", type=int, default=1)
    p.add_argument("--wishes", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
