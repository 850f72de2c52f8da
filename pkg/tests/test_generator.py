"""Synthetic instance generation."""

import pytest

from ttstudio.compiler import compile_graph, static_checks
from ttstudio.generator import GeneratorSpec, InfeasibleSpec, gen_instance
from ttstudio.graph import NodeKind, WishMode
from ttstudio.graphio import serialize_graph
from ttstudio.grid import TimeGrid
from ttstudio.solver import SolverConfig, check_solution, solve


def test_single_course_shape():
    g = gen_instance(GeneratorSpec(seed=1))
    assert len(g.nodes) == 6
    assert len(g.links) == 6
    kinds = sorted(n.kind.value for n in g.nodes)
    assert kinds == sorted(
        k.value
        for k in (
            NodeKind.COURSE,
            NodeKind.LECTURE,
            NodeKind.TUTORIAL,
            NodeKind.LECTURER,
            NodeKind.TEACHING_ASSISTANT,
            NodeKind.STUDY_GROUP,
        )
    )


def test_deterministic():
    spec = GeneratorSpec(seed=42, courses=3, groups=2, lecturers=2, tas=2, wishes=4)
    a = gen_instance(spec)
    b = gen_instance(spec)
    assert a == b
    assert serialize_graph(a) == serialize_graph(b)


def test_seed_changes_wishes_only():
    base = dict(courses=2, groups=2, lecturers=2, tas=1, wishes=3)
    a = gen_instance(GeneratorSpec(seed=1, **base))
    b = gen_instance(GeneratorSpec(seed=2, **base))
    assert [n.kind for n in a.nodes] == [n.kind for n in b.nodes]
    assert a.links == b.links
    assert a.wishes != b.wishes


@pytest.mark.parametrize("seed", range(8))
def test_generated_instances_compile(seed):
    spec = GeneratorSpec(
        seed=seed,
        courses=3 + seed % 3,
        groups=2,
        lecturers=2,
        tas=2,
        tutorials_per_course=2,
        wishes=seed % 5,
    )
    g = gen_instance(spec)
    assert not [f for f in static_checks(g) if f.severity == "error"]
    model = compile_graph(g)
    assert len(model.flags) == spec.wishes


def test_lectures_round_robin_over_lecturers():
    g = gen_instance(GeneratorSpec(seed=0, courses=4, lecturers=2, tas=1, groups=1))
    lecturers = [n for n in g.nodes if n.kind is NodeKind.LECTURER]
    loads = [len(g.events_of(n.id)) for n in lecturers]
    assert loads == [2, 2]


def test_tutorials_round_robin_over_tas():
    g = gen_instance(
        GeneratorSpec(seed=0, courses=3, lecturers=1, tas=2, groups=1, tutorials_per_course=2)
    )
    tas = [n for n in g.nodes if n.kind is NodeKind.TEACHING_ASSISTANT]
    loads = [len(g.events_of(n.id)) for n in tas]
    assert loads == [3, 3]


def test_groups_attend_lectures_of_their_courses():
    g = gen_instance(GeneratorSpec(seed=0, courses=2, lecturers=1, tas=1, groups=2))
    for group in (n for n in g.nodes if n.kind is NodeKind.STUDY_GROUP):
        events = [g.node(e) for e in g.events_of(group.id)]
        tut_courses = {
            g.course_of(e.id) for e in events if e.kind is NodeKind.TUTORIAL
        }
        lec_courses = {
            g.course_of(e.id) for e in events if e.kind is NodeKind.LECTURE
        }
        assert lec_courses == tut_courses


def test_wishes_are_soft_and_in_range():
    g = gen_instance(GeneratorSpec(seed=5, courses=2, lecturers=2, tas=1, groups=1, wishes=6))
    assert len(g.wishes) == 6
    total = g.grid.total_slots
    for w in g.wishes:
        assert w.mode is WishMode.SOFT
        assert 0 <= w.slot < total
    assert len({(w.resource, w.slot) for w in g.wishes}) == 6


def test_zero_courses_gives_resources_only():
    g = gen_instance(GeneratorSpec(seed=0, courses=0, lecturers=2, tas=1, groups=1))
    assert len(g.links) == 0
    assert all(not n.kind.is_event for n in g.nodes)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(courses=1, lecturers=0),
        dict(courses=1, tas=0),
        dict(courses=1, groups=0),
        dict(courses=-1),
        dict(wishes=-2),
        dict(courses=0, lecturers=1, tas=0, groups=0, wishes=200, grid=TimeGrid.of(2, 2)),
    ],
)
def test_infeasible_specs(kwargs):
    with pytest.raises(InfeasibleSpec):
        gen_instance(GeneratorSpec(seed=0, **kwargs))


def test_no_tutorials_allows_missing_tas_and_groups():
    g = gen_instance(
        GeneratorSpec(seed=0, courses=2, lecturers=1, tas=0, groups=0, tutorials_per_course=0)
    )
    assert sum(1 for n in g.nodes if n.kind is NodeKind.LECTURE) == 2
    assert sum(1 for n in g.nodes if n.kind.is_event) == 2


def test_generated_instance_solves():
    g = gen_instance(GeneratorSpec(seed=3, courses=2, groups=2, lecturers=2, tas=1, wishes=2))
    model = compile_graph(g)
    result = solve(model, SolverConfig(time_limit=10.0))
    assert result.status == "optimal"
    assert check_solution(model, result.best.assignment) == []


def test_room_counts_leave_headroom():
    g = gen_instance(GeneratorSpec(seed=0, courses=4, lecturers=2, tas=2, groups=2))
    total = g.grid.total_slots
    for room_type, entry in g.rooms.items():
        members = sum(
            1 for n in g.nodes if n.kind.is_event and n.room_type == room_type
        )
        assert entry.count * total >= members + total
