"""Render a constraint model as deterministic constraint-program text.

One statement per line, trailing comma, labeling line last. Structurally
equal models produce byte-identical text; line_index maps each constraint
ordinal to its inclusive 1-based line span.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .compiler import VARLIST_NAME
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
    SumEq,
)


@dataclass
class ProgramText:
    text: str
    line_index: dict[int, tuple[int, int]] = field(default_factory=dict)


def _contiguous(domain: frozenset[int]) -> bool:
    return len(domain) > 0 and max(domain) - min(domain) + 1 == len(domain)


class _Writer:
    def __init__(self):
        self.lines: list[str] = []

    def put(self, line: str) -> int:
        self.lines.append(line)
        return len(self.lines)


def _emit_domains(model: ConstraintModel, w: _Writer) -> None:
    variables = model.variables
    i = 0
    while i < len(variables):
        domain = variables[i].initial_domain
        if _contiguous(domain):
            j = i
            while j + 1 < len(variables) and variables[j + 1].initial_domain == domain:
                j += 1
            names = ", ".join(v.name for v in variables[i : j + 1])
            w.put(f"domain([{names}], {min(domain)}, {max(domain)}),")
            i = j + 1
        else:
            # holes force a per-variable domain plus a removal line
            if domain:
                lo, hi = min(domain), max(domain)
            else:
                lo, hi = 0, model.grid.total_slots - 1
            name = variables[i].name
            w.put(f"domain([{name}], {lo}, {hi}),")
            gaps = ", ".join(str(v) for v in range(lo, hi + 1) if v not in domain)
            w.put(f"remove({name}, [{gaps}]),")
            i += 1


def _sum_text(terms: tuple[str, ...]) -> str:
    return " + ".join(terms)


def emit(model: ConstraintModel) -> ProgramText:
    w = _Writer()
    index: dict[int, tuple[int, int]] = {}

    _emit_domains(model, w)

    # pair each resource list with its all_different, in list order
    alldiff_at = {
        c.list_name: i
        for i, c in enumerate(model.constraints)
        if isinstance(c, AllDifferent)
    }
    placed: set[int] = set()
    for rl in model.lists:
        w.put(f"{rl.name} = [{', '.join(rl.var_names)}],")
        ordinal = alldiff_at.get(rl.name)
        if ordinal is not None and model.constraints[ordinal].var_names == rl.var_names:
            line = w.put(f"all_different({rl.name}),")
            index[ordinal] = (line, line)
            placed.add(ordinal)

    for ordinal, c in enumerate(model.constraints):
        if ordinal in placed:
            continue
        if isinstance(c, AllDifferent):
            # list-less constraint from a hand-built model
            line = w.put(f"all_different({c.list_name}),")
            index[ordinal] = (line, line)
        elif isinstance(c, CapacityPerSlot):
            ends = [f"{name}E{i}" for i, name in enumerate(c.var_names)]
            first = w.put(f"domain([{', '.join(ends)}], 1, {model.grid.total_slots}),")
            tasks = ", ".join(
                f"task({name}, 1, {end}, 1, {i})"
                for i, (name, end) in enumerate(zip(c.var_names, ends))
            )
            last = w.put(f"cumulative([{tasks}],[limit({c.limit}),global(true)]),")
            index[ordinal] = (first, last)
        elif isinstance(c, CountEq):
            line = w.put(f"count({c.value}, {c.list_name}, {c.count_var}),")
            index[ordinal] = (line, line)
        elif isinstance(c, CountInterval):
            line = w.put(f"count_interval({c.lo}, {c.hi}, {c.list_name}, {c.count_var}),")
            index[ordinal] = (line, line)
        elif isinstance(c, ReifyIsZero):
            line = w.put(f"{c.count_var} #= 0 #<=> {c.bool_var},")
            index[ordinal] = (line, line)
        elif isinstance(c, ReifyNonZero):
            line = w.put(f"{c.count_var} #\\= 0 #<=> {c.bool_var},")
            index[ordinal] = (line, line)
        elif isinstance(c, LinearLeq):
            if c.emit_strict:
                line = w.put(f"{_sum_text(c.terms)} #< {c.bound + 1},")
            else:
                line = w.put(f"{_sum_text(c.terms)} #=< {c.bound},")
            index[ordinal] = (line, line)
        elif isinstance(c, SumEq):
            line = w.put(f"{c.score_var} #= {_sum_text(c.terms)},")
            index[ordinal] = (line, line)
        elif isinstance(c, PrecedenceLeq):
            op = "#<" if c.strict else "#=<"
            line = w.put(f"{c.a} {op} {c.b},")
            index[ordinal] = (line, line)
        else:
            raise TypeError(f"cannot emit {type(c).__name__}")

    if w.lines or model.variables:
        names = ", ".join(v.name for v in model.variables)
        w.put(f"{VARLIST_NAME} = [{names}],")
    if model.objective is not None:
        w.put(f"labeling([ffc, maximize({model.objective})], {VARLIST_NAME}).")
    else:
        w.put(f"labeling([ffc], {VARLIST_NAME}).")

    return ProgramText("\n".join(w.lines) + "\n", index)
