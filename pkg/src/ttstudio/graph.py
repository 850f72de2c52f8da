"""Typed entity-relationship graph of courses, events and resources.

Links are validated when requested, so a stored graph never contains an
illegal connection. Resource nodes keep their linked events in
link-creation order; that order drives deterministic code generation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .grid import TimeGrid


class GraphError(Exception):
    pass


class UnknownNodeError(GraphError):
    pass


class WrongClassError(GraphError):
    pass


class IllegalAttributeError(GraphError):
    pass


class NodeKind(str, Enum):
    LECTURER = "lecturer"
    TEACHING_ASSISTANT = "teaching_assistant"
    STUDY_GROUP = "study_group"
    LECTURE = "lecture"
    TUTORIAL = "tutorial"
    LAB = "lab"
    COURSE = "course"

    @property
    def is_resource(self) -> bool:
        return self in _RESOURCE_KINDS

    @property
    def is_event(self) -> bool:
        return self in _EVENT_KINDS

    @property
    def is_course(self) -> bool:
        return self is NodeKind.COURSE


_RESOURCE_KINDS = frozenset(
    {NodeKind.LECTURER, NodeKind.TEACHING_ASSISTANT, NodeKind.STUDY_GROUP}
)
_EVENT_KINDS = frozenset({NodeKind.LECTURE, NodeKind.TUTORIAL, NodeKind.LAB})

# Room type an event kind books by default.
DEFAULT_ROOM_TYPE = {
    NodeKind.LECTURE: "lecture_hall",
    NodeKind.TUTORIAL: "classroom",
    NodeKind.LAB: "lab",
}

# Resource kind that may carry each event kind.
REQUIRED_RESOURCE = {
    NodeKind.LECTURE: NodeKind.LECTURER,
    NodeKind.TUTORIAL: NodeKind.TEACHING_ASSISTANT,
    NodeKind.LAB: NodeKind.TEACHING_ASSISTANT,
}


class LinkRejection(str, Enum):
    KIND_FORBIDDEN = "KindForbidden"
    DUPLICATE_RESOURCE = "DuplicateResource"
    DUPLICATE_COURSE = "DuplicateCourse"
    DUPLICATE_GROUP = "DuplicateGroup"
    DUPLICATE_LINK = "DuplicateLink"
    SELF_LINK = "SelfLink"
    UNKNOWN_NODE = "UnknownNode"


class WishMode(str, Enum):
    SOFT = "soft"
    HARD = "hard"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    name: str
    room_type: str | None = None
    teaching_load: int | None = None


@dataclass
class RoomEntry:
    count: int
    capacity: int | None = None


@dataclass(frozen=True)
class Wish:
    resource: str
    slot: int
    mode: WishMode = WishMode.SOFT


@dataclass(frozen=True)
class Precedence:
    before: str
    after: str
    strict: bool = False


@dataclass
class Policies:
    global_blocked_slots: set[int] = field(default_factory=set)
    extra_day_off: set[str] = field(default_factory=set)
    full_day_ban: bool = False


# Unordered kind pairs a link may connect (cardinality checked separately).
_LEGAL_PAIRS = frozenset(
    frozenset(p)
    for p in [
        (NodeKind.COURSE, NodeKind.LECTURE),
        (NodeKind.COURSE, NodeKind.TUTORIAL),
        (NodeKind.COURSE, NodeKind.LAB),
        (NodeKind.LECTURER, NodeKind.LECTURE),
        (NodeKind.TEACHING_ASSISTANT, NodeKind.TUTORIAL),
        (NodeKind.TEACHING_ASSISTANT, NodeKind.LAB),
        (NodeKind.STUDY_GROUP, NodeKind.LECTURE),
        (NodeKind.STUDY_GROUP, NodeKind.TUTORIAL),
        (NodeKind.STUDY_GROUP, NodeKind.LAB),
    ]
)


class Graph:
    """Mutable problem statement: nodes, links, grid, rooms and policies.

    Plain data, no internal locking; share read-only between threads and
    synchronize writers externally.
    """

    def __init__(self, grid: TimeGrid | None = None):
        self.grid = grid if grid is not None else TimeGrid()
        self._nodes: dict[str, Node] = {}
        self.links: list[tuple[str, str]] = []
        self._link_set: set[frozenset[str]] = set()
        self._adj: dict[str, list[str]] = {}
        self.rooms: dict[str, RoomEntry] = {}
        self.policies = Policies()
        self.wishes: list[Wish] = []
        self.precedences: list[Precedence] = []
        self._next_id = 1

    # -- nodes ---------------------------------------------------------

    @property
    def nodes(self) -> tuple[Node, ...]:
        """All nodes in creation order."""
        return tuple(self._nodes.values())

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise UnknownNodeError(node_id) from None

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def event_nodes(self) -> list[Node]:
        return [n for n in self._nodes.values() if n.kind.is_event]

    def resource_nodes(self) -> list[Node]:
        return [n for n in self._nodes.values() if n.kind.is_resource]

    def _fresh_id(self) -> str:
        while f"n{self._next_id}" in self._nodes:
            self._next_id += 1
        node_id = f"n{self._next_id}"
        self._next_id += 1
        return node_id

    def add_node(
        self,
        kind: NodeKind,
        name: str,
        room_type: str | None = None,
        teaching_load: int | None = None,
        node_id: str | None = None,
    ) -> str:
        """Insert a node and return its id.

        Event nodes default their room type by kind and get a room inventory
        entry created on demand; attributes of the wrong class raise
        IllegalAttributeError.
        """
        kind = NodeKind(kind)
        if not name:
            raise ValueError("node name must be nonempty")
        if kind.is_event:
            if teaching_load is not None:
                raise IllegalAttributeError("teaching_load only applies to resource nodes")
            if room_type is None:
                room_type = DEFAULT_ROOM_TYPE[kind]
        else:
            if room_type is not None:
                raise IllegalAttributeError("room_type only applies to event nodes")
            if teaching_load is not None and teaching_load < 0:
                raise IllegalAttributeError("teaching_load must be nonnegative")
            if kind.is_course and teaching_load is not None:
                raise IllegalAttributeError("teaching_load only applies to resource nodes")
        if node_id is None:
            node_id = self._fresh_id()
        elif node_id in self._nodes:
            raise ValueError(f"duplicate node id {node_id!r}")
        self._nodes[node_id] = Node(node_id, kind, name, room_type, teaching_load)
        self._adj[node_id] = []
        if kind.is_event and room_type not in self.rooms:
            # referenced room types always have an inventory entry
            self.rooms[room_type] = RoomEntry(count=1)
        return node_id

    # -- links ---------------------------------------------------------

    def _neighbors(self, node_id: str, kind: NodeKind) -> list[str]:
        return [m for m in self._adj[node_id] if self._nodes[m].kind is kind]

    def check_link(self, a: str, b: str) -> LinkRejection | None:
        """Return the rejection a request_link(a, b) would get, or None."""
        if a not in self._nodes or b not in self._nodes:
            return LinkRejection.UNKNOWN_NODE
        if a == b:
            return LinkRejection.SELF_LINK
        ka, kb = self._nodes[a].kind, self._nodes[b].kind
        if frozenset((ka, kb)) not in _LEGAL_PAIRS:
            return LinkRejection.KIND_FORBIDDEN
        if frozenset((a, b)) in self._link_set:
            return LinkRejection.DUPLICATE_LINK
        # orient: one endpoint is the event, the other a course or resource
        event, other = (a, b) if ka.is_event else (b, a)
        ev_kind = self._nodes[event].kind
        other_kind = self._nodes[other].kind
        if other_kind.is_course and self._neighbors(event, NodeKind.COURSE):
            return LinkRejection.DUPLICATE_COURSE
        if other_kind is REQUIRED_RESOURCE[ev_kind] and self._neighbors(event, other_kind):
            return LinkRejection.DUPLICATE_RESOURCE
        if (
            other_kind is NodeKind.STUDY_GROUP
            and ev_kind in (NodeKind.TUTORIAL, NodeKind.LAB)
            and self._neighbors(event, NodeKind.STUDY_GROUP)
        ):
            return LinkRejection.DUPLICATE_GROUP
        return None

    def request_link(self, a: str, b: str) -> LinkRejection | None:
        """Store the link if legal; return the rejection reason otherwise."""
        rejection = self.check_link(a, b)
        if rejection is not None:
            return rejection
        self.links.append((a, b))
        self._link_set.add(frozenset((a, b)))
        self._adj[a].append(b)
        self._adj[b].append(a)
        return None

    def events_of(self, resource: str) -> list[str]:
        """Event nodes linked to a resource, in link-creation order."""
        node = self.node(resource)
        if not node.kind.is_resource:
            raise WrongClassError(f"{resource} is not a resource node")
        return [m for m in self._adj[resource] if self._nodes[m].kind.is_event]

    def course_of(self, event: str) -> str | None:
        node = self.node(event)
        if not node.kind.is_event:
            raise WrongClassError(f"{event} is not an event node")
        courses = self._neighbors(event, NodeKind.COURSE)
        return courses[0] if courses else None

    def resources_of(self, event: str) -> list[str]:
        """Resource nodes linked to an event, in link-creation order."""
        node = self.node(event)
        if not node.kind.is_event:
            raise WrongClassError(f"{event} is not an event node")
        return [m for m in self._adj[event] if self._nodes[m].kind.is_resource]

    # -- rooms, wishes, policies --------------------------------------

    def set_room(self, name: str, count: int, capacity: int | None = None) -> None:
        if count < 0:
            raise ValueError("room count must be nonnegative")
        if capacity is not None and capacity < 0:
            raise ValueError("room capacity must be nonnegative")
        entry = self.rooms.get(name)
        if entry is None:
            self.rooms[name] = RoomEntry(count, capacity)
        else:
            entry.count = count
            entry.capacity = capacity

    def add_wish(self, resource: str, slot: int, mode: WishMode | str = WishMode.SOFT) -> None:
        node = self.node(resource)
        if not node.kind.is_resource:
            raise WrongClassError(f"{resource} is not a resource node")
        self.grid.check_slot(slot)
        self.wishes.append(Wish(resource, slot, WishMode(mode)))

    def add_precedence(self, before: str, after: str, strict: bool = False) -> None:
        for node_id in (before, after):
            if not self.node(node_id).kind.is_event:
                raise WrongClassError(f"{node_id} is not an event node")
        if before == after:
            raise ValueError("precedence endpoints must differ")
        self.precedences.append(Precedence(before, after, strict))

    def grant_extra_day_off(self, resource: str) -> None:
        node = self.node(resource)
        if not node.kind.is_resource:
            raise WrongClassError(f"{resource} is not a resource node")
        self.policies.extra_day_off.add(resource)

    def block_slot(self, slot: int) -> None:
        self.grid.check_slot(slot)
        self.policies.global_blocked_slots.add(slot)

    # -- equality ------------------------------------------------------

    def _struct(self):
        return (
            self.grid,
            self.nodes,
            [frozenset(l) for l in self.links],
            {k: (v.count, v.capacity) for k, v in self.rooms.items()},
            frozenset(self.policies.global_blocked_slots),
            frozenset(self.policies.extra_day_off),
            self.policies.full_day_ban,
            tuple(self.wishes),
            tuple(self.precedences),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._struct() == other._struct()

    __hash__ = None  # type: ignore[assignment]
