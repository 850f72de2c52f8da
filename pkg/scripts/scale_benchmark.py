#!/usr/bin/env python3
"""Benchmark compile and solve times on generated instances.

Prints one row per configuration: events, resources, compile time,
time to the first solution and search statistics.
"""

import argparse
import time

from ttstudio.compiler import compile_graph
from ttstudio.emitter import emit
from ttstudio.generator import GeneratorSpec, gen_instance
from ttstudio.solver import SolverConfig, check_solution, solve


def run_one(spec: GeneratorSpec, time_limit: float, verify: bool) -> None:
    g = gen_instance(spec)
    events = sum(1 for n in g.nodes if n.kind.is_event)
    resources = sum(1 for n in g.nodes if n.kind.is_resource)

    t0 = time.perf_counter()
    model = compile_graph(g)
    program = emit(model)
    compile_s = time.perf_counter() - t0

    t1 = time.perf_counter()
    result = solve(model, SolverConfig(time_limit=time_limit, max_solutions=1))
    solve_s = time.perf_counter() - t1

    if verify:
        for sol in result.solutions:
            bad = check_solution(model, sol.assignment)
            assert not bad, bad

    stats = result.stats
    print(
        f"courses={spec.courses:4d} events={events:5d} resources={resources:4d} "
        f"lines={len(program.text.splitlines()):5d} compile={compile_s:6.3f}s "
        f"solve={solve_s:7.3f}s status={result.status:8s} "
        f"nodes={stats.nodes_explored:6d} failures={stats.failures:5d}"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--courses", type=int, nargs="+", default=[10, 25, 50, 100],
        help="course counts to sweep",
    )
    parser.add_argument("--tutorials-per-course", type=int, default=3)
    parser.add_argument("--time-limit", type=float, default=120.0)
    parser.add_argument("--no-verify", action="store_true")
    args = parser.parse_args()

    for courses in args.courses:
        spec = GeneratorSpec(
            seed=args.seed,
            courses=courses,
            groups=max(1, courses // 2),
            lecturers=max(1, (2 * courses) // 5),
            tas=max(1, (3 * courses) // 5),
            tutorials_per_course=args.tutorials_per_course,
        )
        run_one(spec, args.time_limit, not args.no_verify)


if __name__ == "__main__":
    main()
