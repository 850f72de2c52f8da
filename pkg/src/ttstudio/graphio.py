"""Canonical JSON persistence for graphs.

parse_graph rebuilds a Graph by replaying node and link insertion, so every
stored link passes the same legality checks as interactive editing.
"""

from __future__ import annotations

import json
from typing import Any

from .graph import (
    Graph,
    GraphError,
    IllegalAttributeError,
    NodeKind,
    WishMode,
)
from .grid import OutOfRangeError, TimeGrid


class GraphSyntaxError(ValueError):
    """Input is not a well-formed graph document. Carries a location."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{message} (at {location})" if location else message)


class GraphSemanticError(ValueError):
    """Well-formed document describing an inconsistent graph."""


_MISSING = object()


def _expect(doc: Any, key: str, types, where: str, default=_MISSING):
    if not isinstance(doc, dict):
        raise GraphSyntaxError(f"expected object, got {type(doc).__name__}", where)
    if key not in doc:
        if default is not _MISSING:
            return default
        raise GraphSyntaxError(f"missing key {key!r}", where)
    value = doc[key]
    if value is None and default is None:
        return None
    if not isinstance(value, types) or (types is int and isinstance(value, bool)):
        raise GraphSyntaxError(f"key {key!r} has wrong type {type(value).__name__}", where)
    return value


def graph_from_document(doc: Any) -> Graph:
    """Build a validated Graph from a parsed document."""
    if not isinstance(doc, dict):
        raise GraphSyntaxError(f"expected top-level object, got {type(doc).__name__}", "$")

    tg = _expect(doc, "time_grid", dict, "$", default=None)
    if tg is None:
        grid = TimeGrid()
    else:
        days = _expect(tg, "days", int, "$.time_grid")
        slots = _expect(tg, "slots_per_day", int, "$.time_grid")
        names = _expect(tg, "day_names", list, "$.time_grid", default=None)
        if names is not None and not all(isinstance(n, str) for n in names):
            raise GraphSyntaxError("day_names must be strings", "$.time_grid.day_names")
        try:
            grid = TimeGrid.of(days, slots, tuple(names) if names is not None else None)
        except ValueError as exc:
            raise GraphSemanticError(f"bad time grid: {exc}") from exc

    graph = Graph(grid)

    for i, entry in enumerate(_expect(doc, "room_types", list, "$", default=[])):
        where = f"$.room_types[{i}]"
        name = _expect(entry, "name", str, where)
        count = _expect(entry, "count", int, where)
        capacity = _expect(entry, "capacity", int, where, default=None)
        try:
            graph.set_room(name, count, capacity)
        except ValueError as exc:
            raise GraphSemanticError(f"room type {name!r}: {exc}") from exc

    for i, entry in enumerate(_expect(doc, "nodes", list, "$", default=[])):
        where = f"$.nodes[{i}]"
        node_id = _expect(entry, "id", str, where)
        kind_str = _expect(entry, "kind", str, where)
        name = _expect(entry, "name", str, where)
        try:
            kind = NodeKind(kind_str)
        except ValueError:
            raise GraphSyntaxError(f"unknown kind {kind_str!r}", where) from None
        room_type = _expect(entry, "room_type", str, where, default=None)
        load = _expect(entry, "teaching_load", int, where, default=None)
        try:
            graph.add_node(kind, name, room_type=room_type, teaching_load=load, node_id=node_id)
        except (ValueError, IllegalAttributeError) as exc:
            raise GraphSemanticError(f"node {node_id!r}: {exc}") from exc

    for i, pair in enumerate(_expect(doc, "links", list, "$", default=[])):
        where = f"$.links[{i}]"
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(p, str) for p in pair)
        ):
            raise GraphSyntaxError("link must be a pair of node ids", where)
        rejection = graph.request_link(pair[0], pair[1])
        if rejection is not None:
            raise GraphSemanticError(
                f"illegal link [{pair[0]!r}, {pair[1]!r}]: {rejection.value}"
            )

    pol = _expect(doc, "policies", dict, "$", default=None)
    if pol is not None:
        where = "$.policies"
        for slot in _expect(pol, "global_blocked_slots", list, where, default=[]):
            if not isinstance(slot, int) or isinstance(slot, bool):
                raise GraphSyntaxError("blocked slot must be an integer", where)
            try:
                graph.block_slot(slot)
            except OutOfRangeError as exc:
                raise GraphSemanticError(f"blocked slot {slot}: {exc}") from exc
        for rid in _expect(pol, "extra_day_off", list, where, default=[]):
            if not isinstance(rid, str):
                raise GraphSyntaxError("extra_day_off entries must be node ids", where)
            try:
                graph.grant_extra_day_off(rid)
            except GraphError as exc:
                raise GraphSemanticError(f"extra_day_off {rid!r}: {exc}") from exc
        graph.policies.full_day_ban = bool(_expect(pol, "full_day_ban", bool, where, default=False))

    for i, entry in enumerate(_expect(doc, "wishes", list, "$", default=[])):
        where = f"$.wishes[{i}]"
        resource = _expect(entry, "resource", str, where)
        slot = _expect(entry, "slot", int, where)
        mode = _expect(entry, "mode", str, where, default="soft")
        if mode not in (WishMode.SOFT.value, WishMode.HARD.value):
            raise GraphSyntaxError(f"unknown wish mode {mode!r}", where)
        try:
            graph.add_wish(resource, slot, mode)
        except (GraphError, OutOfRangeError) as exc:
            raise GraphSemanticError(f"wish for {resource!r}: {exc}") from exc

    for i, entry in enumerate(_expect(doc, "precedences", list, "$", default=[])):
        where = f"$.precedences[{i}]"
        before = _expect(entry, "before", str, where)
        after = _expect(entry, "after", str, where)
        strict = _expect(entry, "strict", bool, where, default=False)
        try:
            graph.add_precedence(before, after, strict)
        except (GraphError, ValueError) as exc:
            raise GraphSemanticError(f"precedence {before!r} before {after!r}: {exc}") from exc

    return graph


def graph_to_document(graph: Graph) -> dict:
    """Plain-data form of a graph, key order matching the file format."""
    nodes = []
    for node in graph.nodes:
        entry: dict[str, Any] = {"id": node.id, "kind": node.kind.value, "name": node.name}
        if node.room_type is not None:
            entry["room_type"] = node.room_type
        if node.teaching_load is not None:
            entry["teaching_load"] = node.teaching_load
        nodes.append(entry)
    rooms = []
    for name, room in graph.rooms.items():
        entry = {"name": name, "count": room.count}
        if room.capacity is not None:
            entry["capacity"] = room.capacity
        rooms.append(entry)
    return {
        "time_grid": {
            "days": graph.grid.days_per_week,
            "slots_per_day": graph.grid.slots_per_day,
            "day_names": list(graph.grid.day_names),
        },
        "room_types": rooms,
        "nodes": nodes,
        "links": [[a, b] for a, b in graph.links],
        "policies": {
            "global_blocked_slots": sorted(graph.policies.global_blocked_slots),
            "extra_day_off": sorted(graph.policies.extra_day_off),
            "full_day_ban": graph.policies.full_day_ban,
        },
        "wishes": [
            {"resource": w.resource, "slot": w.slot, "mode": w.mode.value} for w in graph.wishes
        ],
        "precedences": [
            {"before": p.before, "after": p.after, "strict": p.strict}
            for p in graph.precedences
        ],
    }


def parse_graph(text: bytes | str) -> Graph:
    """Parse a canonical graph document into a validated Graph."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphSyntaxError(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return graph_from_document(doc)


def serialize_graph(graph: Graph) -> bytes:
    """Canonical UTF-8 bytes; parse_graph(serialize_graph(g)) reproduces g."""
    return (
        json.dumps(graph_to_document(graph), indent=2, ensure_ascii=False) + "\n"
    ).encode("utf-8")
