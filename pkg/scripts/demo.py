#!/usr/bin/env python3
"""Walk through the full pipeline on a small hand-built department.

Builds the graph link by link, prints the generated constraint
program, solves with soft-wish maximization and renders the weekly
timetables.
"""

import argparse

from ttstudio.compiler import compile_graph
from ttstudio.emitter import emit
from ttstudio.graph import Graph, NodeKind
from ttstudio.graphio import serialize_graph
from ttstudio.grid import TimeGrid
from ttstudio.solver import SolverConfig, solve
from ttstudio.timetable import grid_to_text, render_grids


def build_department() -> Graph:
    g = Graph(TimeGrid.of(3, 3))
    math = g.add_node(NodeKind.COURSE, "Math")
    physics = g.add_node(NodeKind.COURSE, "Physics")
    ml1 = g.add_node(NodeKind.LECTURE, "Math lecture")
    mt1 = g.add_node(NodeKind.TUTORIAL, "Math tut A")
    mt2 = g.add_node(NodeKind.TUTORIAL, "Math tut B")
    pl1 = g.add_node(NodeKind.LECTURE, "Physics lecture")
    for ev in (ml1, mt1, mt2):
        g.request_link(math, ev)
    g.request_link(physics, pl1)

    lecturer = g.add_node(NodeKind.LECTURER, "Lecturer1")
    g.request_link(lecturer, ml1)
    g.request_link(lecturer, pl1)
    ta = g.add_node(NodeKind.TEACHING_ASSISTANT, "TA1")
    g.request_link(ta, mt1)
    g.request_link(ta, mt2)
    group = g.add_node(NodeKind.STUDY_GROUP, "Group1")
    for ev in (ml1, mt1, mt2):
        g.request_link(group, ev)

    # an illegal request is refused, not stored
    refused = g.request_link(ta, ml1)
    assert refused is not None

    g.set_room("lecture_hall", 1)
    g.set_room("classroom", 1)
    g.grant_extra_day_off(lecturer)
    g.policies.full_day_ban = True
    g.add_wish(lecturer, 0)
    g.add_wish(group, 5)
    return g


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dump-graph", metavar="PATH", help="also write the document")
    args = parser.parse_args()

    g = build_department()
    if args.dump_graph:
        with open(args.dump_graph, "wb") as fh:
            fh.write(serialize_graph(g))

    model = compile_graph(g)
    program = emit(model)
    print("== constraint program ==")
    print(program.text)

    result = solve(model, SolverConfig(time_limit=30.0))
    print(f"== search: {result.status}, {len(result.solutions)} solution(s) ==")
    if not result.solutions:
        return
    best = result.best
    print(f"score {best.score}, nodes {result.stats.nodes_explored}, "
          f"failures {result.stats.failures}")
    print()
    for wg in render_grids(best.assignment, g):
        print(grid_to_text(wg))


if __name__ == "__main__":
    main()
