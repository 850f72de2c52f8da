"""Lower a validated graph into a finite-domain constraint model.

Event nodes become slot variables, resource links become all_different
lists, room inventories become per-slot capacities, and policies and
wishes expand into count/reify blocks with a maximized score.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph, Node, NodeKind, WishMode
from .model import (
    AllDifferent,
    CapacityPerSlot,
    ConstraintModel,
    CountEq,
    CountInterval,
    LinearLeq,
    PrecedenceLeq,
    ReifyIsZero,
    ReifyNonZero,
    ResourceList,
    SumEq,
    Variable,
)

KIND_LETTER = {NodeKind.LECTURE: "L", NodeKind.TUTORIAL: "T", NodeKind.LAB: "B"}

SCORE_NAME = "SCONS"
VARLIST_NAME = "L"


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    code: str
    node: str
    message: str


class CompileError(Exception):
    def __init__(self, findings: list[Finding]):
        self.findings = findings
        errors = [f for f in findings if f.severity == "error"]
        super().__init__("; ".join(f"{f.code}: {f.message}" for f in errors))


def sanitize_name(name: str) -> str:
    """Uppercase, non-alphanumeric runs collapsed to one underscore, trimmed."""
    cleaned = re.sub(r"[^A-Za-z0-9]+", "_", name.upper()).strip("_")
    return cleaned or "NODE"


class NameAllocator:
    """Hands out unique identifiers, suffixing a number on collision."""

    def __init__(self, reserved: set[str] | None = None):
        self._taken = set(reserved or ())

    def allocate(self, base: str) -> str:
        name = base
        suffix = 2
        while name in self._taken:
            name = f"{base}{suffix}"
            suffix += 1
        self._taken.add(name)
        return name


def static_checks(graph: Graph) -> list[Finding]:
    """Diagnose the graph without compiling it. Findings follow node order."""
    findings: list[Finding] = []
    rooms_flagged: set[str] = set()
    for node in graph.nodes:
        if node.kind.is_resource:
            load = node.teaching_load
            linked = len(graph.events_of(node.id))
            if load is not None and linked > load:
                findings.append(
                    Finding(
                        "error",
                        "TEACHING_LOAD_EXCEEDED",
                        node.id,
                        f"{node.name!r} carries {linked} events, load allows {load}",
                    )
                )
        elif node.kind.is_event:
            if not graph.resources_of(node.id):
                findings.append(
                    Finding(
                        "warning",
                        "UNLINKED_EVENT",
                        node.id,
                        f"{node.name!r} is linked to no resource",
                    )
                )
            room = graph.rooms.get(node.room_type)
            if room is not None and room.count == 0 and node.room_type not in rooms_flagged:
                rooms_flagged.add(node.room_type)
                findings.append(
                    Finding(
                        "warning",
                        "NO_ROOMS",
                        node.id,
                        f"room type {node.room_type!r} has no rooms but events need it",
                    )
                )
    return findings


def _event_base_name(graph: Graph, event: Node) -> str:
    course_id = graph.course_of(event.id)
    if course_id is None:
        return sanitize_name(event.name)
    course = graph.node(course_id)
    siblings = [
        n
        for n in graph.nodes
        if n.kind is event.kind and graph.course_of(n.id) == course_id
    ]
    ordinal = siblings.index(event) + 1
    return f"{sanitize_name(course.name)}{KIND_LETTER[event.kind]}{ordinal}"


def variable_name(graph: Graph, node_id: str, alloc: NameAllocator | None = None) -> str:
    """Identifier for one node, ignoring cross-node collisions unless
    an allocator is shared across calls."""
    node = graph.node(node_id)
    if alloc is None:
        alloc = NameAllocator({SCORE_NAME, VARLIST_NAME})
    if node.kind.is_event:
        return alloc.allocate(_event_base_name(graph, node))
    return alloc.allocate(sanitize_name(node.name))


def event_names(graph: Graph) -> dict[str, str]:
    """Display name per event node id, identical to compile_graph's choices."""
    alloc = NameAllocator({SCORE_NAME, VARLIST_NAME})
    return {
        node.id: alloc.allocate(_event_base_name(graph, node))
        for node in graph.nodes
        if node.kind.is_event
    }


def compile_graph(graph: Graph) -> ConstraintModel:
    findings = static_checks(graph)
    if any(f.severity == "error" for f in findings):
        raise CompileError(findings)

    grid = graph.grid
    total = grid.total_slots
    spd = grid.slots_per_day
    alloc = NameAllocator({SCORE_NAME, VARLIST_NAME})
    model = ConstraintModel(grid=grid)

    # 1. one slot variable per event node; hard blocks shrink the domain
    hard_slots_of: dict[str, set[int]] = {}
    for wish in graph.wishes:
        if wish.mode is WishMode.HARD:
            hard_slots_of.setdefault(wish.resource, set()).add(wish.slot)
    var_of: dict[str, str] = {}
    for node in graph.nodes:
        if not node.kind.is_event:
            continue
        domain = set(range(total)) - graph.policies.global_blocked_slots
        for resource in graph.resources_of(node.id):
            domain -= hard_slots_of.get(resource, set())
        name = alloc.allocate(_event_base_name(graph, node))
        var_of[node.id] = name
        model.variables.append(Variable(name, node.id, frozenset(domain)))

    # 2. resource lists, all_different for lists of two or more
    soft_wished = {w.resource for w in graph.wishes if w.mode is WishMode.SOFT}
    list_of: dict[str, ResourceList] = {}
    for node in graph.nodes:
        if not node.kind.is_resource:
            continue
        events = graph.events_of(node.id)
        if not events and node.id not in soft_wished:
            continue
        rl = ResourceList(
            alloc.allocate(sanitize_name(node.name)),
            node.id,
            tuple(var_of[e] for e in events),
        )
        list_of[node.id] = rl
        model.lists.append(rl)
        if len(rl.var_names) >= 2:
            model.constraints.append(AllDifferent(rl.name, rl.var_names))

    # 3. room capacities, skipped while vacuous
    for room_type, entry in graph.rooms.items():
        members = tuple(
            var_of[n.id]
            for n in graph.nodes
            if n.kind.is_event and n.room_type == room_type
        )
        if members and entry.count < len(members):
            model.constraints.append(CapacityPerSlot(room_type, members, entry.count))

    # 4. an empty day for every resource granted the extra day off
    for node in graph.nodes:
        if node.id not in graph.policies.extra_day_off:
            continue
        rl = list_of.get(node.id)
        if rl is None or not rl.var_names:
            continue
        used_day_flags = []
        for day in range(grid.days_per_week):
            lo = day * spd
            count_var = alloc.allocate(f"{rl.name}D{day}C")
            model.constraints.append(
                CountInterval(rl.name, rl.var_names, lo, lo + spd - 1, count_var)
            )
            flag = alloc.allocate(f"{rl.name}D{day}")
            model.constraints.append(ReifyNonZero(count_var, flag))
            used_day_flags.append(flag)
        model.constraints.append(
            LinearLeq(
                tuple(reversed(used_day_flags)),
                grid.days_per_week - 1,
                emit_strict=True,
            )
        )

    # 5. study groups never occupy both endpoints of a day
    if graph.policies.full_day_ban and spd >= 2:
        for node in graph.nodes:
            if node.kind is not NodeKind.STUDY_GROUP:
                continue
            rl = list_of.get(node.id)
            if rl is None or not rl.var_names:
                continue
            for day in range(grid.days_per_week):
                first, last = day * spd, day * spd + spd - 1
                first_count = alloc.allocate(f"{rl.name}S{first}C")
                model.constraints.append(
                    CountEq(rl.name, rl.var_names, first, first_count)
                )
                last_count = alloc.allocate(f"{rl.name}S{last}C")
                model.constraints.append(CountEq(rl.name, rl.var_names, last, last_count))
                model.constraints.append(LinearLeq((first_count, last_count), 1))

    # 6. soft wishes become scored flags
    soft_index = 0
    for wish in graph.wishes:
        if wish.mode is not WishMode.SOFT:
            continue
        rl = list_of[wish.resource]
        count_var = alloc.allocate(f"SCOUNT{soft_index}")
        model.constraints.append(CountEq(rl.name, rl.var_names, wish.slot, count_var))
        flag = alloc.allocate(f"SCON{soft_index}")
        model.constraints.append(ReifyIsZero(count_var, flag))
        model.flags.append(flag)
        soft_index += 1

    # 7. precedences
    for prec in graph.precedences:
        model.constraints.append(
            PrecedenceLeq(var_of[prec.before], var_of[prec.after], prec.strict)
        )

    # 8. score to maximize
    if model.flags:
        model.constraints.append(SumEq(SCORE_NAME, tuple(model.flags)))
        model.objective = SCORE_NAME

    model.validate()
    return model
