"""Weekly timetable views of a solved instance.

A solution maps event ids to slot numbers.  Each resource gets its own
grid: days as columns, teaching slots as rows.  A cell lists every event
of that resource placed there, so clashes stay visible instead of being
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .compiler import event_names
from .graph import Graph
from .grid import TimeGrid


class MissingAssignment(KeyError):
    """An event of the rendered resource has no slot in the solution."""


@dataclass
class WeeklyGrid:
    resource: str
    grid: TimeGrid
    # cells[day][slot] holds the display names placed there
    cells: list[list[list[str]]] = field(default_factory=list)

    def cell(self, day: int, slot: int) -> list[str]:
        return self.cells[day][slot]


def render_grids(solution: dict[str, int], graph: Graph) -> list[WeeklyGrid]:
    """One grid per resource node, in creation order.

    Slots come straight from the solution; an event linked to the
    resource but absent from the solution raises MissingAssignment.
    """
    grid = graph.grid
    names = event_names(graph)
    out: list[WeeklyGrid] = []
    for node in graph.nodes:
        if not node.kind.is_resource:
            continue
        wg = WeeklyGrid(
            resource=node.name,
            grid=grid,
            cells=[
                [[] for _ in range(grid.slots_per_day)]
                for _ in range(grid.days_per_week)
            ],
        )
        for event in graph.events_of(node.id):
            if event not in solution:
                raise MissingAssignment(event)
            slot = solution[event]
            grid.check_slot(slot)
            wg.cells[grid.day_of(slot)][grid.slot_in_day(slot)].append(names[event])
        out.append(wg)
    return out


def grid_to_text(wg: WeeklyGrid) -> str:
    """Plain-text table: day columns, one row per teaching slot.

    Empty cells print a middle dot; events sharing a cell are joined
    with a slash so conflicts stand out.
    """
    grid = wg.grid
    rendered = [
        ["/".join(cell) if cell else "·" for cell in day]
        for day in wg.cells
    ]
    label = [str(s + 1) for s in range(grid.slots_per_day)]
    left = max(len(t) for t in label) if label else 1
    widths = [
        max(len(grid.day_names[d]), *(len(rendered[d][s]) for s in range(grid.slots_per_day)))
        if grid.slots_per_day
        else len(grid.day_names[d])
        for d in range(grid.days_per_week)
    ]
    lines = [wg.resource]
    header = " " * left + "  " + "  ".join(
        grid.day_names[d].ljust(widths[d]) for d in range(grid.days_per_week)
    )
    lines.append(header.rstrip())
    for s in range(grid.slots_per_day):
        row = label[s].rjust(left) + "  " + "  ".join(
            rendered[d][s].ljust(widths[d]) for d in range(grid.days_per_week)
        )
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def grid_to_json(wg: WeeklyGrid) -> dict:
    return {
        "resource": wg.resource,
        "cells": [[list(cell) for cell in day] for day in wg.cells],
    }
