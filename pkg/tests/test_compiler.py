"""Graph-to-model lowering: naming, ordering, blocks and diagnostics."""

import pytest

from ttstudio.compiler import (
    CompileError,
    NameAllocator,
    compile_graph,
    sanitize_name,
    static_checks,
    variable_name,
)
from ttstudio.graph import Graph, NodeKind, WishMode
from ttstudio.grid import TimeGrid
from ttstudio.model import (
    AllDifferent,
    CapacityPerSlot,
    CountEq,
    CountInterval,
    LinearLeq,
    PrecedenceLeq,
    ReifyIsZero,
    ReifyNonZero,
    SumEq,
)


def test_sanitize_name():
    assert sanitize_name("Math") == "MATH"
    assert sanitize_name("Dr. Wafik Lotfallah") == "DR_WAFIK_LOTFALLAH"
    assert sanitize_name("  weird--name!! ") == "WEIRD_NAME"
    assert sanitize_name("$$$") == "NODE"


def test_name_allocator_suffixes():
    alloc = NameAllocator({"L"})
    assert alloc.allocate("MATH") == "MATH"
    assert alloc.allocate("MATH") == "MATH2"
    assert alloc.allocate("MATH") == "MATH3"
    assert alloc.allocate("L") == "L2"


def test_event_variable_names(lecturer_pair_graph):
    g = lecturer_pair_graph
    model = compile_graph(g)
    assert model.var_names() == ["MATHL1", "MATHT1", "MATHT2", "PHYSICSL1"]
    assert [v.event for v in model.variables] == [
        g.ids["ml1"],
        g.ids["mt1"],
        g.ids["mt2"],
        g.ids["pl1"],
    ]


def test_variable_name_without_course():
    g = Graph()
    ev = g.add_node(NodeKind.LECTURE, "Opening Ceremony")
    assert variable_name(g, ev) == "OPENING_CEREMONY"


def test_variable_name_collision_between_courses():
    g = Graph()
    c1 = g.add_node(NodeKind.COURSE, "Math")
    c2 = g.add_node(NodeKind.COURSE, "Math")
    e1 = g.add_node(NodeKind.LECTURE, "first")
    e2 = g.add_node(NodeKind.LECTURE, "second")
    g.request_link(c1, e1)
    g.request_link(c2, e2)
    model = compile_graph(g)
    assert model.var_names() == ["MATHL1", "MATHL12"]


def test_courses_produce_no_variables(study_groups_graph):
    model = compile_graph(study_groups_graph)
    assert len(model.variables) == 4  # one per event node, none per course


def test_alldifferent_lists(study_groups_graph):
    model = compile_graph(study_groups_graph)
    assert [(rl.name, rl.var_names) for rl in model.lists] == [
        ("LECTURER1", ("MATHL1", "PHYSICSL1")),
        ("GROUP1", ("MATHL1", "MATHT1", "MATHT2")),
        ("GROUP2", ("PHYSICSL1",)),
    ]
    alldiffs = [c for c in model.constraints if isinstance(c, AllDifferent)]
    # GROUP2 holds one event: its list stays, the vacuous constraint goes
    assert [c.list_name for c in alldiffs] == ["LECTURER1", "GROUP1"]


def test_capacity_blocks(lecturer_pair_graph):
    model = compile_graph(lecturer_pair_graph)
    caps = [c for c in model.constraints if isinstance(c, CapacityPerSlot)]
    assert [(c.room_type, c.var_names, c.limit) for c in caps] == [
        ("lecture_hall", ("MATHL1", "PHYSICSL1"), 1),
        ("classroom", ("MATHT1", "MATHT2"), 1),
    ]


def test_capacity_skipped_when_vacuous(small_grid_graph):
    # two lecture halls cover the two lectures exactly
    model = compile_graph(small_grid_graph)
    assert not any(isinstance(c, CapacityPerSlot) for c in model.constraints)


def test_blocked_slots_shrink_all_domains(small_grid_graph):
    g = small_grid_graph
    g.block_slot(4)
    model = compile_graph(g)
    for v in model.variables:
        assert 4 not in v.initial_domain
        assert len(v.initial_domain) == 8


def test_hard_wish_shrinks_linked_events_only():
    g = Graph(TimeGrid.of(2, 2))
    g.set_room("lecture_hall", 2)
    e1 = g.add_node(NodeKind.LECTURE, "A")
    e2 = g.add_node(NodeKind.LECTURE, "B")
    lecturer = g.add_node(NodeKind.LECTURER, "Lect")
    g.request_link(lecturer, e1)
    g.add_wish(lecturer, 0, WishMode.HARD)
    model = compile_graph(g)
    by_name = {v.name: v for v in model.variables}
    assert by_name["A"].initial_domain == frozenset({1, 2, 3})
    assert by_name["B"].initial_domain == frozenset({0, 1, 2, 3})
    # hard wishes carry no flag and no objective
    assert model.flags == []
    assert model.objective is None


def test_day_off_block_shape(small_grid_graph):
    g = small_grid_graph
    g.grant_extra_day_off(g.ids["lecturer"])
    model = compile_graph(g)
    intervals = [c for c in model.constraints if isinstance(c, CountInterval)]
    assert [(c.lo, c.hi, c.count_var) for c in intervals] == [
        (0, 2, "LECTURER1D0C"),
        (3, 5, "LECTURER1D1C"),
        (6, 8, "LECTURER1D2C"),
    ]
    reifs = [c for c in model.constraints if isinstance(c, ReifyNonZero)]
    assert [(c.count_var, c.bool_var) for c in reifs] == [
        ("LECTURER1D0C", "LECTURER1D0"),
        ("LECTURER1D1C", "LECTURER1D1"),
        ("LECTURER1D2C", "LECTURER1D2"),
    ]
    (leq,) = [c for c in model.constraints if isinstance(c, LinearLeq)]
    assert leq.terms == ("LECTURER1D2", "LECTURER1D1", "LECTURER1D0")
    assert leq.bound == 2  # at least one of three days stays empty
    assert leq.emit_strict


def test_day_off_skipped_without_events():
    g = Graph(TimeGrid.of(3, 3))
    lecturer = g.add_node(NodeKind.LECTURER, "Idle")
    g.grant_extra_day_off(lecturer)
    model = compile_graph(g)
    assert model.constraints == []


def test_full_day_ban_blocks():
    g = Graph(TimeGrid.of(2, 3))
    g.set_room("classroom", 2)
    t1 = g.add_node(NodeKind.TUTORIAL, "T one")
    t2 = g.add_node(NodeKind.TUTORIAL, "T two")
    group = g.add_node(NodeKind.STUDY_GROUP, "Group1")
    lecturer = g.add_node(NodeKind.LECTURER, "NotAGroup")
    g.request_link(group, t1)
    g.request_link(group, t2)
    g.policies.full_day_ban = True
    model = compile_graph(g)
    counts = [c for c in model.constraints if isinstance(c, CountEq)]
    assert [(c.value, c.count_var) for c in counts] == [
        (0, "GROUP1S0C"),
        (2, "GROUP1S2C"),
        (3, "GROUP1S3C"),
        (5, "GROUP1S5C"),
    ]
    leqs = [c for c in model.constraints if isinstance(c, LinearLeq)]
    assert [(c.terms, c.bound, c.emit_strict) for c in leqs] == [
        (("GROUP1S0C", "GROUP1S2C"), 1, False),
        (("GROUP1S3C", "GROUP1S5C"), 1, False),
    ]


def test_full_day_ban_needs_two_slots_per_day():
    g = Graph(TimeGrid.of(3, 1))
    e = g.add_node(NodeKind.LECTURE, "Solo")
    group = g.add_node(NodeKind.STUDY_GROUP, "Group1")
    g.request_link(group, e)
    g.policies.full_day_ban = True
    model = compile_graph(g)
    assert not any(isinstance(c, CountEq) for c in model.constraints)


def test_soft_wishes_make_flags(small_grid_graph):
    g = small_grid_graph
    g.add_wish(g.ids["lecturer"], 0)
    g.add_wish(g.ids["lecturer"], 5)
    model = compile_graph(g)
    counts = [c for c in model.constraints if isinstance(c, CountEq)]
    assert [(c.value, c.count_var) for c in counts] == [(0, "SCOUNT0"), (5, "SCOUNT1")]
    reifs = [c for c in model.constraints if isinstance(c, ReifyIsZero)]
    assert [(c.count_var, c.bool_var) for c in reifs] == [
        ("SCOUNT0", "SCON0"),
        ("SCOUNT1", "SCON1"),
    ]
    assert model.flags == ["SCON0", "SCON1"]
    (s,) = [c for c in model.constraints if isinstance(c, SumEq)]
    assert s.score_var == "SCONS"
    assert s.terms == ("SCON0", "SCON1")
    assert model.objective == "SCONS"


def test_wish_on_resource_without_events_keeps_flag():
    g = Graph(TimeGrid.of(2, 2))
    lecturer = g.add_node(NodeKind.LECTURER, "Idle")
    g.add_wish(lecturer, 1)
    model = compile_graph(g)
    assert [rl.var_names for rl in model.lists] == [()]
    assert len(model.flags) == 1
    assert model.objective == "SCONS"


def test_precedences_compiled(small_grid_graph):
    g = small_grid_graph
    g.add_precedence(g.ids["ml1"], g.ids["pl1"], strict=True)
    g.add_precedence(g.ids["pl1"], g.ids["ml1"])
    model = compile_graph(g)
    precs = [c for c in model.constraints if isinstance(c, PrecedenceLeq)]
    assert [(c.a, c.b, c.strict) for c in precs] == [
        ("MATHL1", "PHYSICSL1", True),
        ("PHYSICSL1", "MATHL1", False),
    ]


def test_empty_graph_compiles_empty_model():
    model = compile_graph(Graph())
    assert model.variables == []
    assert model.constraints == []
    assert model.objective is None


def test_static_checks_load(small_grid_graph):
    g = small_grid_graph
    overloaded = g.add_node(NodeKind.LECTURER, "Busy", teaching_load=1)
    e3 = g.add_node(NodeKind.LECTURE, "Extra")
    e4 = g.add_node(NodeKind.LECTURE, "More")
    g.request_link(overloaded, e3)
    g.request_link(overloaded, e4)
    findings = static_checks(g)
    errors = [f for f in findings if f.severity == "error"]
    assert len(errors) == 1
    assert errors[0].code == "TEACHING_LOAD_EXCEEDED"
    assert errors[0].node == overloaded
    with pytest.raises(CompileError) as exc:
        compile_graph(g)
    assert any(f.code == "TEACHING_LOAD_EXCEEDED" for f in exc.value.findings)


def test_static_checks_load_within_limit(small_grid_graph):
    g = small_grid_graph
    relaxed = g.add_node(NodeKind.LECTURER, "Relaxed", teaching_load=2)
    g.request_link(relaxed, g.ids["ml1"])
    assert [f for f in static_checks(g) if f.severity == "error"] == []


def test_static_checks_unlinked_event():
    g = Graph()
    course = g.add_node(NodeKind.COURSE, "Math")
    ev = g.add_node(NodeKind.LECTURE, "Floating")
    g.request_link(course, ev)  # a course link is not a resource link
    findings = static_checks(g)
    assert [f.code for f in findings] == ["UNLINKED_EVENT"]
    assert findings[0].severity == "warning"


def test_static_checks_no_rooms():
    g = Graph()
    g.set_room("classroom", 0)
    t1 = g.add_node(NodeKind.TUTORIAL, "T1")
    t2 = g.add_node(NodeKind.TUTORIAL, "T2")
    ta = g.add_node(NodeKind.TEACHING_ASSISTANT, "TA")
    g.request_link(ta, t1)
    g.request_link(ta, t2)
    findings = static_checks(g)
    no_rooms = [f for f in findings if f.code == "NO_ROOMS"]
    assert len(no_rooms) == 1
    assert no_rooms[0].node == t1
    # warnings do not stop compilation; the model is honestly unsatisfiable
    model = compile_graph(g)
    caps = [c for c in model.constraints if isinstance(c, CapacityPerSlot)]
    assert caps[0].limit == 0


def test_findings_follow_node_order():
    g = Graph()
    e1 = g.add_node(NodeKind.LECTURE, "First")
    busy = g.add_node(NodeKind.LECTURER, "Busy", teaching_load=0)
    e2 = g.add_node(NodeKind.LECTURE, "Second")
    g.request_link(busy, e2)
    codes = [(f.node, f.code) for f in static_checks(g)]
    assert codes == [
        (e1, "UNLINKED_EVENT"),
        (busy, "TEACHING_LOAD_EXCEEDED"),
    ]


def test_recompile_after_link_touches_only_that_resource(lecturer_pair_graph):
    g = lecturer_pair_graph
    extra = g.add_node(NodeKind.LECTURE, "Extra lecture")
    g.request_link(g.ids["physics"], extra)
    before = compile_graph(g)
    g.request_link(g.ids["lecturer"], extra)
    after = compile_graph(g)

    assert before.variables == after.variables

    def untouched(model):
        return [
            c
            for c in model.constraints
            if not (isinstance(c, AllDifferent) and c.list_name == "LECTURER1")
        ]

    assert untouched(before) == untouched(after)


def test_flag_count_matches_soft_wishes(study_groups_graph):
    g = study_groups_graph
    g.add_wish(g.ids["lecturer"], 0)
    g.add_wish(g.ids["group1"], 7)
    g.add_wish(g.ids["group2"], 3, WishMode.HARD)
    model = compile_graph(g)
    assert len(model.flags) == 2
    reif_targets = [
        c.bool_var for c in model.constraints if isinstance(c, ReifyIsZero)
    ]
    assert reif_targets == model.flags
    (s,) = [c for c in model.constraints if isinstance(c, SumEq)]
    assert s.terms == tuple(model.flags)
