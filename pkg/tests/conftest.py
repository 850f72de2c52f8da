"""Shared graph fixtures."""

import pytest

from ttstudio.graph import Graph, NodeKind
from ttstudio.grid import TimeGrid


@pytest.fixture
def lecturer_pair_graph():
    """Two courses, three Math events, one lecturer on both lectures."""
    g = Graph()
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
    g.ids = {
        "math": math,
        "physics": physics,
        "ml1": ml1,
        "mt1": mt1,
        "mt2": mt2,
        "pl1": pl1,
        "lecturer": lecturer,
    }
    return g


@pytest.fixture
def study_groups_graph(lecturer_pair_graph):
    """The pair graph extended with two study groups."""
    g = lecturer_pair_graph
    ids = g.ids
    group1 = g.add_node(NodeKind.STUDY_GROUP, "Group1")
    for key in ("ml1", "mt1", "mt2"):
        g.request_link(group1, ids[key])
    group2 = g.add_node(NodeKind.STUDY_GROUP, "Group2")
    g.request_link(group2, ids["pl1"])
    ids["group1"] = group1
    ids["group2"] = group2
    return g


@pytest.fixture
def small_grid_graph():
    """Three-day, three-slot week with a lecturer teaching two lectures."""
    g = Graph(TimeGrid.of(3, 3))
    g.set_room("lecture_hall", 2)
    ml1 = g.add_node(NodeKind.LECTURE, "MathL1")
    pl1 = g.add_node(NodeKind.LECTURE, "PhysicsL1")
    lecturer = g.add_node(NodeKind.LECTURER, "Lecturer1")
    g.request_link(lecturer, ml1)
    g.request_link(lecturer, pl1)
    g.ids = {"ml1": ml1, "pl1": pl1, "lecturer": lecturer}
    return g
