"""Synthetic instance generator for benchmarks and property tests."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .graph import Graph, NodeKind, WishMode
from .grid import TimeGrid


class InfeasibleSpec(ValueError):
    """The requested counts cannot produce a legal instance."""


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int = 0
    courses: int = 1
    groups: int = 1
    lecturers: int = 1
    tas: int = 1
    tutorials_per_course: int = 1
    wishes: int = 0
    grid: TimeGrid = field(default_factory=TimeGrid)


def gen_instance(spec: GeneratorSpec) -> Graph:
    """Deterministic random instance for the given spec.

    Every course gets one lecture plus `tutorials_per_course` tutorials.
    Lectures cycle through the lecturers, tutorials cycle through TAs and
    study groups, and each group also attends the lectures of the courses
    it takes tutorials in.  Soft wishes are sampled (resource, slot) pairs.
    Room counts are sized so the instance stays satisfiable in aggregate.
    """
    counts = (
        spec.courses,
        spec.groups,
        spec.lecturers,
        spec.tas,
        spec.tutorials_per_course,
        spec.wishes,
    )
    if any(c < 0 for c in counts):
        raise InfeasibleSpec("counts must be non-negative")
    if spec.courses > 0 and spec.lecturers == 0:
        raise InfeasibleSpec("lectures need at least one lecturer")
    tutorials = spec.courses * spec.tutorials_per_course
    if tutorials > 0 and spec.tas == 0:
        raise InfeasibleSpec("tutorials need at least one TA")
    if tutorials > 0 and spec.groups == 0:
        raise InfeasibleSpec("tutorials need at least one study group")

    rng = random.Random(spec.seed)
    g = Graph(grid=spec.grid)

    lecturers = [g.add_node(NodeKind.LECTURER, f"Lecturer{i + 1}") for i in range(spec.lecturers)]
    tas = [g.add_node(NodeKind.TEACHING_ASSISTANT, f"TA{i + 1}") for i in range(spec.tas)]
    groups = [g.add_node(NodeKind.STUDY_GROUP, f"Group{i + 1}") for i in range(spec.groups)]

    group_courses: dict[str, list[str]] = {gid: [] for gid in groups}
    tut_index = 0
    for c in range(spec.courses):
        course = g.add_node(NodeKind.COURSE, f"Course{c + 1}")
        lecture = g.add_node(NodeKind.LECTURE, f"Course{c + 1} lecture")
        g.request_link(course, lecture)
        g.request_link(lecturers[c % spec.lecturers], lecture)
        for t in range(spec.tutorials_per_course):
            tut = g.add_node(NodeKind.TUTORIAL, f"Course{c + 1} tutorial {t + 1}")
            g.request_link(course, tut)
            g.request_link(tas[tut_index % spec.tas], tut)
            gid = groups[tut_index % spec.groups]
            g.request_link(gid, tut)
            if lecture not in group_courses[gid]:
                group_courses[gid].append(lecture)
            tut_index += 1
    for gid in groups:
        for lecture in group_courses[gid]:
            g.request_link(gid, lecture)

    # leave headroom above the per-slot average so rooms never force unsat
    total = spec.grid.total_slots
    for room_type in list(g.rooms):
        members = sum(
            1 for n in g.nodes if n.kind.is_event and n.room_type == room_type
        )
        g.set_room(room_type, count=max(1, math.ceil(members / total) + 1))

    if spec.wishes:
        resources = lecturers + tas + groups
        pool = [(r, s) for r in resources for s in range(total)]
        if spec.wishes > len(pool):
            raise InfeasibleSpec(
                f"cannot place {spec.wishes} wishes over {len(pool)} slot pairs"
            )
        for resource, slot in rng.sample(pool, spec.wishes):
            g.add_wish(resource, slot, WishMode.SOFT)

    return g
