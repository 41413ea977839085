"""Phase 1: specialize the CLP encoding w.r.t. the initial states and the property.

The interpreter for ``sat``/``sat_all`` is never materialized as clauses.  A
clause body is a list of literals from a closed vocabulary, and unfolding a
literal dispatches on its shape, which is the only thing the interpreter
clauses can ever match.

Variables are integers.  Definitions and their clauses put the head state in
``0..k-1``; everything else draws fresh indices from a per-run counter and is
renumbered when a folded clause is emitted.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .constraints import (TRUE, Constraint, conj, entails, equivalent, project,
                          remove_redundant, satisfiable)
from .firing import Firing, fires
from .generalization import GenOp, generalize
from .model import Af, And, Elem, EncodedProgram, Eu, Ex, Formula, Not

State = tuple[int, ...]


class TimeLimit(RuntimeError):
    """The shared time budget ran out."""


class StepLimit(RuntimeError):
    """An unfolding run took more steps than configured."""


# --- body literals ------------------------------------------------------------

@dataclass(frozen=True)
class Init:
    state: State


@dataclass(frozen=True)
class Trans:
    src: State
    dst: State


@dataclass(frozen=True)
class Ts:
    state: State
    succ: int  # list variable, bound when the literal is unfolded


@dataclass(frozen=True)
class SatAll:
    states: Union[int, tuple[State, ...]]  # list variable or concrete list
    formula: Formula


@dataclass(frozen=True)
class ElemLit:
    name: str
    state: State


@dataclass(frozen=True)
class Sat:
    state: State
    formula: Formula


@dataclass(frozen=True)
class NegSat:
    state: State
    formula: Formula


@dataclass(frozen=True)
class Def:
    pred: str
    state: State


@dataclass(frozen=True)
class NegDef:
    pred: str
    state: State


Literal = Union[Init, Trans, Ts, SatAll, ElemLit, Sat, NegSat, Def, NegDef]


def literal_vars(lit: Literal) -> set[int]:
    if isinstance(lit, Trans):
        return set(lit.src) | set(lit.dst)
    if isinstance(lit, SatAll):
        if isinstance(lit.states, int):
            return set()
        return {v for s in lit.states for v in s}
    return set(lit.state)


def selectable(lit: Literal) -> bool:
    """Literals the unfolding loop may pick; eu/af-headed sat atoms are not among them."""
    if isinstance(lit, (Init, Trans, Ts, ElemLit)):
        return True
    if isinstance(lit, Sat):
        return isinstance(lit.formula, (Elem, Not, And, Ex))
    if isinstance(lit, SatAll):
        return not isinstance(lit.states, int)
    return False


def _program_defined(lit: Literal) -> bool:
    return isinstance(lit, (Init, Trans, Ts, ElemLit, Sat, SatAll))


@dataclass(frozen=True)
class SpecClause:
    head: str
    head_vars: State
    constraint: Constraint
    body: tuple[Literal, ...]

    def vars(self) -> set[int]:
        out = set(self.head_vars)
        for lit in self.body:
            out |= literal_vars(lit)
        return out


@dataclass
class Definition:
    id: str
    constraint: Constraint
    formula: Formula
    parent: str | None
    origin: str  # "fresh" or "generalized"
    projection: Constraint  # the e_p that caused the definition
    ancestor: str | None = None  # set for generalized definitions


@dataclass
class SpecConfig:
    firing: Firing = Firing.ALWAYS
    genop: GenOp = GenOp.WM
    deadline: float | None = None  # time.monotonic() value
    max_unfold_steps: int = 200_000
    ancestor_inclusive: bool = True


@dataclass
class SpecStats:
    reuse: int = 0
    generalize: int = 0
    fresh: int = 0
    unfold_steps: int = 0
    # per Unfold run: how many eu/af-headed sat literals were unfolded
    eu_af_unfoldings: list[int] = field(default_factory=list)


ROOT = "negprop"


@dataclass
class SpecializedProgram:
    clauses: list[SpecClause]
    definitions: dict[str, Definition]
    stats: SpecStats
    k: int

    def predicates(self) -> list[str]:
        return ["prop", ROOT] + list(self.definitions)

    def arity(self, pred: str) -> int:
        return 0 if pred in ("prop", ROOT) else self.k

    def dump(self) -> str:
        lines = []
        for d in self.definitions.values():
            lines.append(f"% {d.id}({_args(range(self.k))}) := {d.constraint} / sat({d.formula})"
                         f" [{d.origin}{', from ' + d.ancestor if d.ancestor else ''}]")
        for cl in self.clauses:
            lines.append(format_clause(cl))
        return "\n".join(lines) + "\n"


def _args(vars_: Iterable[int]) -> str:
    return ",".join(f"X{v + 1}" for v in vars_)


def format_literal(lit: Literal) -> str:
    if isinstance(lit, Def):
        return f"{lit.pred}({_args(lit.state)})" if lit.state else lit.pred
    if isinstance(lit, NegDef):
        return f"~{lit.pred}({_args(lit.state)})" if lit.state else f"~{lit.pred}"
    if isinstance(lit, Sat):
        return f"sat(({_args(lit.state)}),{lit.formula})"
    if isinstance(lit, NegSat):
        return f"~sat(({_args(lit.state)}),{lit.formula})"
    return repr(lit)


def format_clause(cl: SpecClause) -> str:
    head = f"{cl.head}({_args(cl.head_vars)})" if cl.head_vars else cl.head
    body = ", ".join(format_literal(lit) for lit in cl.body)
    return f"{head} :- {cl.constraint} | {body}"


class Specializer:
    """One run of the Specialize procedure; owns its definition tree."""

    def __init__(self, program: EncodedProgram, config: SpecConfig):
        self.program = program
        self.spec = program.spec
        self.k = program.spec.k
        self.config = config
        self.fresh = itertools.count(self.k)
        self.defs: dict[str, Definition] = {}
        self.stats = SpecStats()
        self._eu_af = 0

    # -- helpers --------------------------------------------------------------

    def _check_time(self) -> None:
        if self.config.deadline is not None and time.monotonic() > self.config.deadline:
            raise TimeLimit("specialization exceeded the time budget")

    def _state(self) -> State:
        return tuple(next(self.fresh) for _ in range(self.k))

    def _at(self, c: Constraint, state: State, offset: int = 0) -> Constraint:
        """Instantiate a constraint over ``offset..offset+k-1`` on ``state``."""
        return c.rename({offset + i: v for i, v in enumerate(state)})

    def _make(self, clause: SpecClause, extra: Constraint, body: tuple[Literal, ...]) -> SpecClause | None:
        c = conj(clause.constraint, extra)
        if not satisfiable(c):
            return None
        keep = set(clause.head_vars)
        for lit in body:
            keep |= literal_vars(lit)
        if not c.vars <= keep:
            c = project(c, keep, simplify=False)
        return SpecClause(clause.head, clause.head_vars, c, body)

    # -- unfolding --------------------------------------------------------------

    def unfold_once(self, clause: SpecClause, pos: int) -> list[SpecClause]:
        lit = clause.body[pos]
        before, after = clause.body[:pos], clause.body[pos + 1:]
        spec = self.spec
        outs: list[tuple[Constraint, tuple[Literal, ...], tuple[Literal, ...]]] = []
        if isinstance(lit, Init):
            for c in spec.inits:
                outs.append((self._at(c, lit.state), (), after))
        elif isinstance(lit, Trans):
            for t in spec.transitions:
                mapping = {i: v for i, v in enumerate(lit.src)}
                mapping.update({self.k + i: v for i, v in enumerate(lit.dst)})
                outs.append((t.relation.rename(mapping), (), after))
        elif isinstance(lit, Ts):
            for tc in self.program.ts or ():
                succs = tuple(self._state() for _ in tc.successors)
                c = self._at(tc.region, lit.state)
                for rel, y in zip(tc.successors, succs):
                    mapping = {i: v for i, v in enumerate(lit.state)}
                    mapping.update({self.k + i: v for i, v in enumerate(y)})
                    c = conj(c, rel.rename(mapping))
                rest = tuple(SatAll(succs, l.formula) if isinstance(l, SatAll) and l.states == lit.succ else l
                             for l in after)
                outs.append((c, (), rest))
        elif isinstance(lit, ElemLit):
            outs.append((self._at(spec.elem(lit.name), lit.state), (), after))
        elif isinstance(lit, SatAll):
            if lit.states:
                first, rest = lit.states[0], lit.states[1:]
                outs.append((TRUE, (Sat(first, lit.formula), SatAll(rest, lit.formula)), after))
            else:
                outs.append((TRUE, (), after))
        elif isinstance(lit, Sat):
            f, x = lit.formula, lit.state
            if isinstance(f, Elem):
                outs.append((TRUE, (ElemLit(f.name, x),), after))
            elif isinstance(f, Not):
                outs.append((TRUE, (NegSat(x, f.arg),), after))
            elif isinstance(f, And):
                outs.append((TRUE, (Sat(x, f.left), Sat(x, f.right)), after))
            elif isinstance(f, Ex):
                y = self._state()
                outs.append((TRUE, (Trans(x, y), Sat(y, f.arg)), after))
            elif isinstance(f, Eu):
                self._eu_af += 1
                y = self._state()
                outs.append((TRUE, (Sat(x, f.right),), after))
                outs.append((TRUE, (Sat(x, f.left), Trans(x, y), Sat(y, f)), after))
            elif isinstance(f, Af):
                self._eu_af += 1
                ys = next(self.fresh)
                outs.append((TRUE, (Sat(x, f.arg),), after))
                outs.append((TRUE, (Ts(x, ys), SatAll(ys, f)), after))
            else:
                raise TypeError(f"unexpected formula {f!r}")
        else:
            raise ValueError(f"literal {lit!r} is not defined by the program")
        result = []
        for extra, inserted, tail in outs:
            made = self._make(clause, extra, before + inserted + tail)
            if made is not None:
                result.append(made)
        return result

    def unfold(self, clause: SpecClause) -> list[SpecClause]:
        self._eu_af = 0
        first = next(i for i, lit in enumerate(clause.body) if _program_defined(lit))
        gamma = self.unfold_once(clause, first)
        steps = 1
        while True:
            self._check_time()
            target = None
            for ci, cl in enumerate(gamma):
                for li, lit in enumerate(cl.body):
                    if selectable(lit):
                        target = (ci, li)
                        break
                if target:
                    break
            if target is None:
                break
            ci, li = target
            gamma[ci:ci + 1] = self.unfold_once(gamma[ci], li)
            steps += 1
            if steps > self.config.max_unfold_steps:
                raise StepLimit("unfolding exceeded the step bound")
        self.stats.unfold_steps += steps
        self.stats.eu_af_unfoldings.append(self._eu_af)
        return remove_subsumed(gamma)

    # -- generalize & fold --------------------------------------------------------

    def _ancestors(self, gamma: str) -> list[Definition]:
        path = []
        node = gamma if self.config.ancestor_inclusive else self.defs[gamma].parent if gamma in self.defs else None
        while node is not None and node in self.defs:
            path.append(self.defs[node])
            node = self.defs[node].parent
        return path

    def _define(self, gamma: str, formula: Formula, ep: Constraint, new: list[Definition]) -> str:
        for d in reversed(list(self.defs.values())):
            if d.formula == formula and entails(ep, d.constraint):
                self.stats.reuse += 1
                return d.id
        origin, ancestor, constraint = "fresh", None, ep
        for alpha in self._ancestors(gamma):
            if alpha.formula == formula and fires(self.config.firing, alpha.constraint, ep):
                constraint = generalize(self.config.genop, alpha.constraint, ep)
                origin, ancestor = "generalized", alpha.id
                break
        if origin == "fresh":
            self.stats.fresh += 1
        else:
            self.stats.generalize += 1
            for d in reversed(list(self.defs.values())):
                if d.formula == formula and equivalent(d.constraint, constraint):
                    return d.id
        ident = f"new{len(self.defs) + 1}"
        d = Definition(ident, constraint, formula, gamma if gamma in self.defs else None,
                       origin, ep, ancestor)
        self.defs[ident] = d
        new.append(d)
        return ident

    def generalize_and_fold(self, gamma: str, clauses: list[SpecClause]):
        new: list[Definition] = []
        folded = []
        for cl in clauses:
            self._check_time()
            body = []
            for lit in cl.body:
                if isinstance(lit, (Sat, NegSat)):
                    ep = project(cl.constraint, lit.state)
                    ep = ep.rename({v: i for i, v in enumerate(lit.state)})
                    ident = self._define(gamma, lit.formula, ep, new)
                    body.append(Def(ident, lit.state) if isinstance(lit, Sat) else NegDef(ident, lit.state))
                else:
                    body.append(lit)
            folded.append(canonical_clause(SpecClause(cl.head, cl.head_vars, cl.constraint, tuple(body))))
        return new, folded

    def run(self) -> SpecializedProgram:
        x = self._state()
        root = SpecClause(ROOT, (), TRUE, (Init(x), Sat(x, self.program.formula)))
        clauses = [SpecClause("prop", (), TRUE, (NegDef(ROOT, ()),))]
        queue: deque[tuple[str, SpecClause]] = deque([(ROOT, root)])
        while queue:
            self._check_time()
            gamma, clause = queue.popleft()
            unfolded = self.unfold(clause)
            new, folded = self.generalize_and_fold(gamma, unfolded)
            clauses.extend(folded)
            for d in new:
                head = tuple(range(self.k))
                queue.append((d.id, SpecClause(d.id, head, d.constraint, (Sat(head, d.formula),))))
        return SpecializedProgram(clauses, dict(self.defs), self.stats, self.k)


def remove_subsumed(clauses: list[SpecClause]) -> list[SpecClause]:
    """Drop every clause whose constraint entails that of a distinct constrained fact."""
    kept = list(clauses)
    i = 0
    while i < len(kept):
        eta = kept[i]
        subsumed = any(j != i and not delta.body and entails(eta.constraint, delta.constraint)
                       for j, delta in enumerate(kept))
        if subsumed:
            del kept[i]
        else:
            i += 1
    return kept


def canonical_clause(cl: SpecClause) -> SpecClause:
    """Project away stray variables, renumber body variables in order of appearance."""
    mapping = {v: i for i, v in enumerate(cl.head_vars)}
    nxt = len(mapping)
    for lit in cl.body:
        for v in sorted(literal_vars(lit), key=lambda v: _position(lit, v)):
            if v not in mapping:
                mapping[v] = nxt
                nxt += 1
    c = project(cl.constraint, mapping.keys())
    c = c.rename(mapping)
    body = tuple(_rename_lit(lit, mapping) for lit in cl.body)
    return SpecClause(cl.head, tuple(mapping[v] for v in cl.head_vars), c, body)


def _position(lit: Literal, v: int) -> int:
    return lit.state.index(v) if hasattr(lit, "state") and v in lit.state else 0


def _rename_lit(lit: Literal, m: dict[int, int]) -> Literal:
    s = tuple(m[v] for v in lit.state)
    return type(lit)(lit.pred, s) if isinstance(lit, (Def, NegDef)) else type(lit)(s, lit.formula)


def specialize(program: EncodedProgram, config: SpecConfig | None = None) -> SpecializedProgram:
    return Specializer(program, config or SpecConfig()).run()
