"""Finite-domain constraint model produced by the compiler.

Plain data. Variables take slot values; auxiliary names (counts, flags,
the score) are introduced by the constraints that define them and get
their domains from that defining constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grid import TimeGrid


@dataclass(frozen=True)
class Variable:
    name: str
    event: str  # node id
    initial_domain: frozenset[int]


@dataclass(frozen=True)
class ResourceList:
    """Named list of event variables owned by one resource node."""

    name: str
    resource: str  # node id
    var_names: tuple[str, ...]


@dataclass(frozen=True)
class AllDifferent:
    list_name: str
    var_names: tuple[str, ...]


@dataclass(frozen=True)
class CapacityPerSlot:
    """At most `limit` of the variables may share any single value."""

    room_type: str
    var_names: tuple[str, ...]
    limit: int

    def __post_init__(self):
        if self.limit < 0:
            raise ValueError("limit must be nonnegative")


@dataclass(frozen=True)
class CountEq:
    """count_var = |{v in var_names : v = value}|."""

    list_name: str
    var_names: tuple[str, ...]
    value: int
    count_var: str


@dataclass(frozen=True)
class CountInterval:
    """count_var = |{v in var_names : lo <= v <= hi}|."""

    list_name: str
    var_names: tuple[str, ...]
    lo: int
    hi: int
    count_var: str

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")


@dataclass(frozen=True)
class ReifyIsZero:
    """bool_var = 1 iff count_var = 0."""

    count_var: str
    bool_var: str


@dataclass(frozen=True)
class ReifyNonZero:
    """bool_var = 1 iff count_var != 0."""

    count_var: str
    bool_var: str


@dataclass(frozen=True)
class LinearLeq:
    """sum(terms) <= bound. emit_strict renders it as `... #< bound+1`."""

    terms: tuple[str, ...]
    bound: int
    emit_strict: bool = False

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")


@dataclass(frozen=True)
class SumEq:
    """score_var = sum(terms)."""

    score_var: str
    terms: tuple[str, ...]


@dataclass(frozen=True)
class PrecedenceLeq:
    """a <= b, or a < b when strict."""

    a: str
    b: str
    strict: bool = False


Constraint = (
    AllDifferent
    | CapacityPerSlot
    | CountEq
    | CountInterval
    | ReifyIsZero
    | ReifyNonZero
    | LinearLeq
    | SumEq
    | PrecedenceLeq
)


def constraint_vars(constraint: Constraint) -> tuple[str, ...]:
    """Every variable name the constraint mentions, defined aux names last."""
    if isinstance(constraint, (AllDifferent, CapacityPerSlot)):
        return constraint.var_names
    if isinstance(constraint, (CountEq, CountInterval)):
        return constraint.var_names + (constraint.count_var,)
    if isinstance(constraint, (ReifyIsZero, ReifyNonZero)):
        return (constraint.count_var, constraint.bool_var)
    if isinstance(constraint, LinearLeq):
        return constraint.terms
    if isinstance(constraint, SumEq):
        return constraint.terms + (constraint.score_var,)
    if isinstance(constraint, PrecedenceLeq):
        return (constraint.a, constraint.b)
    raise TypeError(f"not a constraint: {constraint!r}")


def defined_aux(constraint: Constraint) -> tuple[str, int] | None:
    """(aux name, domain upper bound) for constraints that introduce one."""
    if isinstance(constraint, (CountEq, CountInterval)):
        return constraint.count_var, len(constraint.var_names)
    if isinstance(constraint, (ReifyIsZero, ReifyNonZero)):
        return constraint.bool_var, 1
    if isinstance(constraint, SumEq):
        return constraint.score_var, len(constraint.terms)
    return None


@dataclass
class ConstraintModel:
    grid: TimeGrid
    variables: list[Variable] = field(default_factory=list)
    lists: list[ResourceList] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    objective: str | None = None

    def var_names(self) -> list[str]:
        return [v.name for v in self.variables]

    def aux_domains(self) -> dict[str, tuple[int, int]]:
        """Domains of auxiliary variables, in definition order."""
        out: dict[str, tuple[int, int]] = {}
        for constraint in self.constraints:
            defined = defined_aux(constraint)
            if defined is not None:
                out[defined[0]] = (0, defined[1])
        return out

    def validate(self) -> None:
        """Raise ValueError when a constraint references an unknown name."""
        known = set(self.var_names())
        if len(known) != len(self.variables):
            raise ValueError("duplicate variable name")
        for rl in self.lists:
            for name in rl.var_names:
                if name not in known:
                    raise ValueError(f"list {rl.name} references unknown {name}")
        for constraint in self.constraints:
            defined = defined_aux(constraint)
            aux = defined[0] if defined else None
            for name in constraint_vars(constraint):
                if name == aux:
                    continue
                if name not in known:
                    raise ValueError(f"{type(constraint).__name__} references unknown {name}")
            if aux is not None:
                if aux in known:
                    raise ValueError(f"{aux} defined twice")
                known.add(aux)
        for flag in self.flags:
            if flag not in known:
                raise ValueError(f"flag {flag} never defined")
        if self.objective is not None and self.objective not in known:
            raise ValueError(f"objective {self.objective} never defined")
