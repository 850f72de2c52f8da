"""Finite-domain propagation and branch-and-bound search.

Domains are int bitmasks. Search is depth-first with the ffc rule:
smallest domain first, ties by most attached constraints, then leftmost.
Optimization raises a score floor after each incumbent and keeps going,
so reported scores strictly increase.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .model import (
    AllDifferent,
    CapacityPerSlot,
    Constraint,
    ConstraintModel,
    CountEq,
    CountInterval,
    LinearLeq,
    PrecedenceLeq,
    ReifyIsZero,
    ReifyNonZero,
    SumEq,
    constraint_vars,
)

ORACLE_GUARD = 10**7

DomainSet = set  # of slot indices


class TooLargeError(Exception):
    """Search space exceeds the brute-force guard."""


# -- spec-level propagation primitives (set based, used directly in tests) --


def propagate_all_different(domains: list[DomainSet]) -> list[DomainSet] | None:
    """Singleton elimination to fixpoint plus a pigeonhole union check.

    Returns revised copies, or None on failure.
    """
    revised = [set(d) for d in domains]
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(revised):
            if len(d) != 1:
                continue
            value = next(iter(d))
            for j, other in enumerate(revised):
                if j != i and value in other:
                    other.discard(value)
                    if not other:
                        return None
                    changed = True
    union = set().union(*revised) if revised else set()
    if len(union) < len(revised):
        return None
    return revised


def propagate_capacity(domains: list[DomainSet], limit: int) -> list[DomainSet] | None:
    """Remove saturated values from unfixed domains; fail past the limit."""
    revised = [set(d) for d in domains]
    changed = True
    while changed:
        changed = False
        fixed: dict[int, int] = {}
        for d in revised:
            if len(d) == 1:
                value = next(iter(d))
                fixed[value] = fixed.get(value, 0) + 1
        for value in set().union(*revised) if revised else set():
            used = fixed.get(value, 0)
            if used > limit:
                return None
            if used == limit:
                for d in revised:
                    if len(d) > 1 and value in d:
                        d.discard(value)
                        if not d:
                            return None
                        changed = True
    return revised


def select_variable(entries: list[tuple[int, int]]) -> int:
    """ffc choice among (domain size, degree) pairs: index of the winner."""
    if not entries:
        raise ValueError("no unfixed variables")
    best = 0
    for i, (size, degree) in enumerate(entries[1:], start=1):
        bsize, bdegree = entries[best]
        if size < bsize or (size == bsize and degree > bdegree):
            best = i
    return best


# -- search results --


@dataclass
class SearchStats:
    nodes_explored: int = 0
    failures: int = 0
    elapsed: float = 0.0
    proven_optimal: bool = False


@dataclass(frozen=True)
class Solution:
    assignment: dict[str, int]
    score: int
    stats: SearchStats


@dataclass(frozen=True)
class SolverConfig:
    time_limit: float | None = None  # seconds
    max_solutions: int | None = None
    optimize: bool | None = None  # None: optimize iff the model has an objective

    def __post_init__(self):
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.max_solutions is not None and self.max_solutions <= 0:
            raise ValueError("max_solutions must be positive")


@dataclass
class SolveResult:
    solutions: list[Solution]
    stats: SearchStats
    status: str  # "optimal" | "feasible" | "unsat" | "timeout"

    @property
    def best(self) -> Solution | None:
        return self.solutions[-1] if self.solutions else None


# -- definition-based evaluation (shared by oracle and post-hoc checker) --


def _evaluate(model: ConstraintModel, assignment: dict[str, int], stop_early: bool = False):
    """(violations, score) for a total event assignment, by direct definition."""
    env: dict[str, int] = {}
    for var in model.variables:
        value = assignment[var.event]
        env[var.name] = value
        if value not in var.initial_domain:
            return [f"{var.name}={value} outside its domain"], 0
    violations: list[str] = []
    for c in model.constraints:
        if isinstance(c, AllDifferent):
            values = [env[n] for n in c.var_names]
            if len(set(values)) != len(values):
                violations.append(f"all_different({c.list_name}) violated")
        elif isinstance(c, CapacityPerSlot):
            per_slot: dict[int, int] = {}
            for n in c.var_names:
                per_slot[env[n]] = per_slot.get(env[n], 0) + 1
            if per_slot and max(per_slot.values()) > c.limit:
                violations.append(f"capacity {c.room_type} over {c.limit}")
        elif isinstance(c, CountEq):
            env[c.count_var] = sum(1 for n in c.var_names if env[n] == c.value)
        elif isinstance(c, CountInterval):
            env[c.count_var] = sum(1 for n in c.var_names if c.lo <= env[n] <= c.hi)
        elif isinstance(c, ReifyIsZero):
            env[c.bool_var] = 1 if env[c.count_var] == 0 else 0
        elif isinstance(c, ReifyNonZero):
            env[c.bool_var] = 1 if env[c.count_var] != 0 else 0
        elif isinstance(c, LinearLeq):
            if sum(env[t] for t in c.terms) > c.bound:
                violations.append(f"sum({', '.join(c.terms)}) > {c.bound}")
        elif isinstance(c, SumEq):
            env[c.score_var] = sum(env[t] for t in c.terms)
        elif isinstance(c, PrecedenceLeq):
            a, b = env[c.a], env[c.b]
            if a > b or (c.strict and a == b):
                violations.append(f"{c.a} must precede {c.b}")
        else:
            raise TypeError(f"cannot evaluate {type(c).__name__}")
        if stop_early and violations:
            return violations, 0
    score = env.get(model.objective, 0) if model.objective else 0
    return violations, score


def check_solution(model: ConstraintModel, assignment: dict[str, int]) -> list[str]:
    """Violation messages for an assignment; empty means it satisfies the model."""
    missing = [v.event for v in model.variables if v.event not in assignment]
    if missing:
        return [f"no slot assigned to {e}" for e in missing]
    violations, _ = _evaluate(model, assignment)
    return violations


def brute_force_oracle(model: ConstraintModel) -> list[tuple[dict[str, int], int]]:
    """All satisfying assignments with scores, by exhaustive enumeration."""
    size = 1
    for var in model.variables:
        size *= len(var.initial_domain)
        if size > ORACLE_GUARD:
            raise TooLargeError(f"search space beyond {ORACLE_GUARD}")
    events = [v.event for v in model.variables]
    out: list[tuple[dict[str, int], int]] = []
    for combo in itertools.product(*(sorted(v.initial_domain) for v in model.variables)):
        assignment = dict(zip(events, combo))
        violations, score = _evaluate(model, assignment, stop_early=True)
        if not violations:
            out.append((assignment, score))
    return out


# -- propagation engine --


def _mask_of(values) -> int:
    mask = 0
    for v in values:
        mask |= 1 << v
    return mask


def _values_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _range_mask(lo: int, hi: int) -> int:
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


class _Prop:
    """One propagator; run() prunes and returns False on a wipeout."""

    __slots__ = ("engine",)

    def __init__(self, engine: _Engine):
        self.engine = engine

    def watched(self) -> tuple[int, ...]:
        raise NotImplementedError

    def run(self) -> bool:
        raise NotImplementedError


class _AllDifferentProp(_Prop):
    __slots__ = ("vars",)

    def __init__(self, engine, vars):
        super().__init__(engine)
        self.vars = vars

    def watched(self):
        return self.vars

    def run(self):
        eng = self.engine
        fixed_mask = 0
        changed = True
        while changed:
            changed = False
            fixed_mask = 0
            for i in self.vars:
                d = eng.domains[i]
                if d & (d - 1) == 0:
                    if d & fixed_mask:
                        return False  # two variables share one fixed value
                    fixed_mask |= d
            for i in self.vars:
                d = eng.domains[i]
                if d & (d - 1) == 0:
                    continue
                nd = d & ~fixed_mask
                if nd != d:
                    if not eng.update(i, nd):
                        return False
                    changed = True
        union = 0
        for i in self.vars:
            union |= eng.domains[i]
        return union.bit_count() >= len(self.vars)


class _CapacityProp(_Prop):
    __slots__ = ("vars", "limit")

    def __init__(self, engine, vars, limit):
        super().__init__(engine)
        self.vars = vars
        self.limit = limit

    def watched(self):
        return self.vars

    def run(self):
        eng = self.engine
        changed = True
        while changed:
            changed = False
            union = 0
            counts: dict[int, int] = {}
            for i in self.vars:
                d = eng.domains[i]
                union |= d
                if d & (d - 1) == 0:
                    v = d.bit_length() - 1
                    counts[v] = counts.get(v, 0) + 1
            for v in _values_of(union):
                used = counts.get(v, 0)
                if used > self.limit:
                    return False
                if used == self.limit:
                    bit = 1 << v
                    for i in self.vars:
                        d = eng.domains[i]
                        if d & (d - 1) != 0 and d & bit:
                            if not eng.update(i, d & ~bit):
                                return False
                            changed = True
        return True


class _CountProp(_Prop):
    """Shared rules for count over a value (CountEq) or interval."""

    __slots__ = ("vars", "count_var", "value_mask")

    def __init__(self, engine, vars, count_var, value_mask):
        super().__init__(engine)
        self.vars = vars
        self.count_var = count_var
        self.value_mask = value_mask

    def watched(self):
        return self.vars + (self.count_var,)

    def run(self):
        eng = self.engine
        vm = self.value_mask
        while True:
            inside = 0  # domain entirely within the counted set
            touching = 0  # domain intersects the counted set
            for i in self.vars:
                d = eng.domains[i]
                if d & vm:
                    touching += 1
                    if d & ~vm == 0:
                        inside += 1
            if not eng.update(self.count_var, eng.domains[self.count_var] & _range_mask(inside, touching)):
                return False
            cd = eng.domains[self.count_var]
            cmin = (cd & -cd).bit_length() - 1
            cmax = cd.bit_length() - 1
            changed = False
            if cmin == touching and inside < touching:
                # every candidate must land in the counted set
                for i in self.vars:
                    d = eng.domains[i]
                    if d & vm and d & ~vm:
                        if not eng.update(i, d & vm):
                            return False
                        changed = True
            if cmax == inside and touching > inside:
                # no remaining candidate may enter the counted set
                for i in self.vars:
                    d = eng.domains[i]
                    if d & vm and d & ~vm:
                        if not eng.update(i, d & ~vm):
                            return False
                        changed = True
            if not changed:
                return True


class _ReifyProp(_Prop):
    __slots__ = ("count_var", "bool_var", "true_on_zero")

    def __init__(self, engine, count_var, bool_var, true_on_zero):
        super().__init__(engine)
        self.count_var = count_var
        self.bool_var = bool_var
        self.true_on_zero = true_on_zero

    def watched(self):
        return (self.count_var, self.bool_var)

    def run(self):
        eng = self.engine
        cd = eng.domains[self.count_var]
        zero_flag, nonzero_flag = (2, 1) if self.true_on_zero else (1, 2)
        if cd == 1:  # count is exactly 0
            if not eng.update(self.bool_var, eng.domains[self.bool_var] & zero_flag):
                return False
        elif cd & 1 == 0:  # zero impossible
            if not eng.update(self.bool_var, eng.domains[self.bool_var] & nonzero_flag):
                return False
        bd = eng.domains[self.bool_var]
        if bd == zero_flag:
            return eng.update(self.count_var, eng.domains[self.count_var] & 1)
        if bd == nonzero_flag:
            return eng.update(self.count_var, eng.domains[self.count_var] & ~1)
        return True


class _LinearLeqProp(_Prop):
    __slots__ = ("terms", "bound")

    def __init__(self, engine, terms, bound):
        super().__init__(engine)
        self.terms = terms
        self.bound = bound

    def watched(self):
        return self.terms

    def run(self):
        eng = self.engine
        mins = []
        total_min = 0
        for i in self.terms:
            d = eng.domains[i]
            m = (d & -d).bit_length() - 1
            mins.append(m)
            total_min += m
        if total_min > self.bound:
            return False
        for i, m in zip(self.terms, mins):
            cap = self.bound - (total_min - m)
            d = eng.domains[i]
            if d.bit_length() - 1 > cap:
                if not eng.update(i, d & _range_mask(0, cap)):
                    return False
        return True


class _SumEqProp(_Prop):
    __slots__ = ("score_var", "terms")

    def __init__(self, engine, score_var, terms):
        super().__init__(engine)
        self.score_var = score_var
        self.terms = terms

    def watched(self):
        return self.terms + (self.score_var,)

    def run(self):
        eng = self.engine
        floor = eng.score_floor if self.score_var == eng.objective_idx else 0
        while True:
            lo = hi = 0
            for i in self.terms:
                d = eng.domains[i]
                lo += (d & -d).bit_length() - 1
                hi += d.bit_length() - 1
            sd = eng.domains[self.score_var] & _range_mask(max(lo, floor), hi)
            if not eng.update(self.score_var, sd):
                return False
            smin = (sd & -sd).bit_length() - 1
            smax = sd.bit_length() - 1
            changed = False
            for i in self.terms:
                d = eng.domains[i]
                tmin = (d & -d).bit_length() - 1
                tmax = d.bit_length() - 1
                # term must fit what the score leaves for it
                cap_hi = smax - (lo - tmin)
                cap_lo = smin - (hi - tmax)
                nd = d & _range_mask(max(0, cap_lo), cap_hi)
                if nd != d:
                    if not eng.update(i, nd):
                        return False
                    changed = True
            if not changed:
                return True


class _PrecedenceProp(_Prop):
    __slots__ = ("a", "b", "strict")

    def __init__(self, engine, a, b, strict):
        super().__init__(engine)
        self.a = a
        self.b = b
        self.strict = strict

    def watched(self):
        return (self.a, self.b)

    def run(self):
        eng = self.engine
        gap = 1 if self.strict else 0
        da, db = eng.domains[self.a], eng.domains[self.b]
        bmax = db.bit_length() - 1
        if not eng.update(self.a, da & _range_mask(0, bmax - gap)):
            return False
        da = eng.domains[self.a]
        amin = (da & -da).bit_length() - 1
        return eng.update(self.b, db & ~_range_mask(0, amin + gap - 1))


class _Engine:
    def __init__(self, model: ConstraintModel, config: SolverConfig):
        self.model = model
        self.config = config
        self.optimizing = (
            config.optimize
            if config.optimize is not None
            else model.objective is not None
        )

        names: list[str] = []
        self.index: dict[str, int] = {}
        for v in model.variables:
            self.index[v.name] = len(names)
            names.append(v.name)
        self.n_decisions = len(names)
        for aux, (lo, hi) in model.aux_domains().items():
            self.index[aux] = len(names)
            names.append(aux)
        self.names = names

        self.domains: list[int] = [0] * len(names)
        for v in model.variables:
            self.domains[self.index[v.name]] = _mask_of(v.initial_domain)
        for aux, (lo, hi) in model.aux_domains().items():
            self.domains[self.index[aux]] = _range_mask(lo, hi)

        self.objective_idx = (
            self.index[model.objective] if model.objective is not None else -1
        )
        self.score_floor = 0

        self.props: list[_Prop] = []
        self.obj_prop: int | None = None
        for c in model.constraints:
            prop = self._build(c)
            if isinstance(prop, _SumEqProp) and prop.score_var == self.objective_idx:
                self.obj_prop = len(self.props)
            self.props.append(prop)

        self.watchers: list[list[int]] = [[] for _ in names]
        for pid, prop in enumerate(self.props):
            for i in prop.watched():
                self.watchers[i].append(pid)

        self.degree = [0] * self.n_decisions
        for c in model.constraints:
            for name in set(constraint_vars(c)):
                i = self.index[name]
                if i < self.n_decisions:
                    self.degree[i] += 1

        self.queue: list[int] = []
        self.in_queue = [False] * len(self.props)
        self.stats = SearchStats()

    def _build(self, c: Constraint) -> _Prop:
        ix = self.index
        if isinstance(c, AllDifferent):
            return _AllDifferentProp(self, tuple(ix[n] for n in c.var_names))
        if isinstance(c, CapacityPerSlot):
            return _CapacityProp(self, tuple(ix[n] for n in c.var_names), c.limit)
        if isinstance(c, CountEq):
            return _CountProp(
                self, tuple(ix[n] for n in c.var_names), ix[c.count_var], 1 << c.value
            )
        if isinstance(c, CountInterval):
            return _CountProp(
                self,
                tuple(ix[n] for n in c.var_names),
                ix[c.count_var],
                _range_mask(c.lo, c.hi),
            )
        if isinstance(c, ReifyIsZero):
            return _ReifyProp(self, ix[c.count_var], ix[c.bool_var], True)
        if isinstance(c, ReifyNonZero):
            return _ReifyProp(self, ix[c.count_var], ix[c.bool_var], False)
        if isinstance(c, LinearLeq):
            return _LinearLeqProp(self, tuple(ix[t] for t in c.terms), c.bound)
        if isinstance(c, SumEq):
            return _SumEqProp(self, ix[c.score_var], tuple(ix[t] for t in c.terms))
        if isinstance(c, PrecedenceLeq):
            return _PrecedenceProp(self, ix[c.a], ix[c.b], c.strict)
        raise TypeError(f"no propagator for {type(c).__name__}")

    # domain update with watcher wakeup; False on wipeout
    def update(self, i: int, new_mask: int) -> bool:
        old = self.domains[i]
        if new_mask == old:
            return True
        if new_mask == 0:
            return False
        self.domains[i] = new_mask
        for pid in self.watchers[i]:
            if not self.in_queue[pid]:
                self.in_queue[pid] = True
                self.queue.append(pid)
        return True

    def enqueue_all(self) -> None:
        for pid in range(len(self.props)):
            if not self.in_queue[pid]:
                self.in_queue[pid] = True
                self.queue.append(pid)

    def propagate(self) -> bool:
        if self.optimizing and self.obj_prop is not None and not self.in_queue[self.obj_prop]:
            self.in_queue[self.obj_prop] = True
            self.queue.append(self.obj_prop)
        while self.queue:
            pid = self.queue.pop()
            self.in_queue[pid] = False
            if not self.props[pid].run():
                for other in self.queue:
                    self.in_queue[other] = False
                self.queue.clear()
                return False
        return True

    def select(self) -> int | None:
        best = None
        best_key = None
        for i in range(self.n_decisions):
            d = self.domains[i]
            if d & (d - 1) == 0:
                continue
            key = (d.bit_count(), -self.degree[i])
            if best_key is None or key < best_key:
                best, best_key = i, key
        return best

    def solve(self) -> SolveResult:
        t0 = time.monotonic()
        deadline = t0 + self.config.time_limit if self.config.time_limit else None
        solutions: list[Solution] = []
        status = None
        exhausted = False

        def snapshot(proven: bool = False) -> SearchStats:
            return SearchStats(
                self.stats.nodes_explored,
                self.stats.failures,
                time.monotonic() - t0,
                proven,
            )

        max_solutions = self.config.max_solutions

        self.enqueue_all()
        feasible_root = self.propagate()
        # frame: [var, values, next value index, domains before any of them]
        frames: list[list] = []
        advance = feasible_root
        if not feasible_root:
            exhausted = True

        while not exhausted:
            if deadline is not None and time.monotonic() > deadline:
                status = "timeout"
                break
            if advance:
                var = self.select()
                if var is None:
                    score = 0
                    if self.objective_idx >= 0:
                        sd = self.domains[self.objective_idx]
                        assert sd & (sd - 1) == 0
                        score = sd.bit_length() - 1
                    assignment = {
                        self.model.variables[i].event: self.domains[i].bit_length() - 1
                        for i in range(self.n_decisions)
                    }
                    if not self.optimizing or score >= self.score_floor:
                        solutions.append(Solution(assignment, score, snapshot()))
                        if self.optimizing:
                            self.score_floor = score + 1
                    if self.optimizing and self.objective_idx < 0:
                        # nothing to maximize: the first solution is optimal
                        exhausted = True
                        break
                    if max_solutions is not None and len(solutions) >= max_solutions:
                        break
                    advance = False
                    continue
                frames.append([var, _values_of(self.domains[var]), 0, self.domains.copy()])
            else:
                while frames and frames[-1][2] >= len(frames[-1][1]):
                    frames.pop()
                if not frames:
                    exhausted = True
                    break
            frame = frames[-1]
            self.domains = frame[3].copy()
            value = frame[1][frame[2]]
            frame[2] += 1
            self.stats.nodes_explored += 1
            self.update(frame[0], 1 << value)
            if self.propagate():
                advance = True
            else:
                self.stats.failures += 1
                advance = False

        if status is None:
            if exhausted:
                if not solutions:
                    status = "unsat"
                elif self.optimizing:
                    status = "optimal"
                else:
                    status = "feasible"
            else:
                status = "feasible"  # stopped at max_solutions

        proven = status == "optimal"
        final = snapshot(proven)
        self.stats = final
        return SolveResult(solutions, final, status)


def solve(model: ConstraintModel, config: SolverConfig | None = None) -> SolveResult:
    """Search the model for solutions under the given limits."""
    model.validate()
    return _Engine(model, config or SolverConfig()).solve()
