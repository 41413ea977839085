"""Systems, CTL formulas, and the successor-list relation.

A system has ``k`` rational state variables numbered ``0..k-1``.  A transition
relates a state to its successor through one constraint over ``0..2k-1``,
where ``k + i`` is the next-state copy of variable ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .constraints import (TRUE, Constraint, conj, negate_conjunction, project,
                          satisfiable)


class SizeLimit(RuntimeError):
    """A case split grew past its configured bound."""


class NotTotal(ValueError):
    """Some satisfiable region of the state space has no outgoing transition."""

    def __init__(self, region: Constraint):
        super().__init__(f"transition relation is not total: no transition from {region}")
        self.region = region


# --- CTL --------------------------------------------------------------------

class Formula:
    """Base class for CTL formulas; subclasses are frozen dataclasses."""

    def children(self) -> tuple["Formula", ...]:
        return ()

    def walk(self) -> Iterator["Formula"]:
        yield self
        for ch in self.children():
            yield from ch.walk()


@dataclass(frozen=True)
class Elem(Formula):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self) -> str:
        return f"not({self.arg})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"and({self.left},{self.right})"


@dataclass(frozen=True)
class Ex(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self) -> str:
        return f"ex({self.arg})"


@dataclass(frozen=True)
class Eu(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"eu({self.left},{self.right})"


@dataclass(frozen=True)
class Af(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self) -> str:
        return f"af({self.arg})"


# Sugar, removed by desugar().

@dataclass(frozen=True)
class Ef(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self) -> str:
        return f"ef({self.arg})"


@dataclass(frozen=True)
class Eg(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self) -> str:
        return f"eg({self.arg})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self) -> str:
        return f"or({self.left},{self.right})"


@dataclass(frozen=True)
class Ag(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)

    def __str__(self) -> str:
        return f"ag({self.arg})"


TRUE_F = Elem("true")


def _not(f: Formula) -> Formula:
    return f.arg if isinstance(f, Not) else Not(f)


def desugar(f: Formula) -> Formula:
    """Rewrite into elem/not/and/ex/eu/af and cancel double negations."""
    if isinstance(f, Elem):
        return f
    if isinstance(f, Not):
        return _not(desugar(f.arg))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Ex):
        return Ex(desugar(f.arg))
    if isinstance(f, Eu):
        return Eu(desugar(f.left), desugar(f.right))
    if isinstance(f, Af):
        return Af(desugar(f.arg))
    if isinstance(f, Ef):
        return Eu(TRUE_F, desugar(f.arg))
    if isinstance(f, Eg):
        return _not(Af(_not(desugar(f.arg))))
    if isinstance(f, Or):
        return _not(And(_not(desugar(f.left)), _not(desugar(f.right))))
    if isinstance(f, Ag):
        return _not(Eu(TRUE_F, _not(desugar(f.arg))))
    raise TypeError(f"not a CTL formula: {f!r}")


def uses_af(f: Formula) -> bool:
    return any(isinstance(g, Af) for g in f.walk())


def elem_names(f: Formula) -> set[str]:
    return {g.name for g in f.walk() if isinstance(g, Elem)}


# --- systems ----------------------------------------------------------------

@dataclass(frozen=True)
class Transition:
    name: str
    relation: Constraint


@dataclass(frozen=True)
class ElemProp:
    name: str
    cond: Constraint


@dataclass(frozen=True)
class TsClause:
    """States in ``region`` have exactly the listed successor relations."""

    region: Constraint
    successors: tuple[Constraint, ...]
    transitions: tuple[int, ...] = ()


@dataclass(frozen=True)
class SystemSpec:
    name: str
    vars: tuple[str, ...]
    inits: tuple[Constraint, ...]
    transitions: tuple[Transition, ...]
    elems: tuple[ElemProp, ...]
    property: Formula

    @property
    def k(self) -> int:
        return len(self.vars)

    def elem(self, name: str) -> Constraint:
        if name == "true":
            return TRUE
        for e in self.elems:
            if e.name == name:
                return e.cond
        raise KeyError(name)

    def guard(self, t: Transition) -> Constraint:
        return project(t.relation, range(self.k))

    def names(self) -> dict[int, str]:
        out = {i: v for i, v in enumerate(self.vars)}
        out.update({self.k + i: v + "'" for i, v in enumerate(self.vars)})
        return out


@dataclass
class EncodedProgram:
    """A system together with its derived successor lists.

    The interpreter clauses for ``sat``/``sat_all`` are not stored; the
    specializer knows their shapes.
    """

    spec: SystemSpec
    formula: Formula
    ts: list[TsClause] | None = None


def derive_ts(spec: SystemSpec, max_regions: int = 4096) -> list[TsClause]:
    """Split the state space by which transition guards hold.

    Guards are added one at a time; each region is cut into its intersection
    with the guard and the disjoint pieces of its intersection with the guard's
    complement, keeping only satisfiable pieces.  A region where no guard
    holds means the relation is not total.
    """
    k = spec.k
    guards = [spec.guard(t) for t in spec.transitions]
    regions: list[tuple[Constraint, tuple[int, ...]]] = [(TRUE, ())]
    for i, g in enumerate(guards):
        split: list[tuple[Constraint, tuple[int, ...]]] = []
        pieces = negate_conjunction(g)
        for region, taken in regions:
            inside = conj(region, g)
            if satisfiable(inside):
                split.append((inside, taken + (i,)))
            for piece in pieces:
                outside = conj(region, piece)
                if satisfiable(outside):
                    split.append((outside, taken))
        if len(split) > max_regions:
            raise SizeLimit(f"successor-list derivation exceeded {max_regions} regions")
        regions = split
    out = []
    for region, taken in regions:
        if not taken:
            raise NotTotal(project(region, range(k)))
        region = project(region, range(k))
        succ = tuple(conj(region, spec.transitions[i].relation) for i in taken)
        out.append(TsClause(region, succ, taken))
    return out


def encode(spec: SystemSpec, max_regions: int = 4096) -> EncodedProgram:
    formula = desugar(Not(spec.property))
    ts = derive_ts(spec, max_regions) if uses_af(formula) else None
    return EncodedProgram(spec, formula, ts)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.message}"


def validate(spec: SystemSpec) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    if not spec.inits:
        diags.append(Diagnostic("error", "no initial constraint"))
    if not spec.transitions:
        diags.append(Diagnostic("error", "no transitions"))
    seen = set()
    for e in spec.elems:
        if e.name in seen or e.name == "true":
            diags.append(Diagnostic("error", f"elementary property {e.name!r} declared twice"))
        seen.add(e.name)
        if not satisfiable(e.cond):
            diags.append(Diagnostic("warning", f"elementary property {e.name!r} is unsatisfiable"))
    for i, c in enumerate(spec.inits):
        if not satisfiable(c):
            diags.append(Diagnostic("error", f"unsatisfiable initial constraint #{i + 1}"))
    for t in spec.transitions:
        if not satisfiable(t.relation):
            diags.append(Diagnostic("error", f"transition {t.name!r} is unsatisfiable"))
    for name in sorted(elem_names(spec.property) - seen - {"true"}):
        diags.append(Diagnostic("error", f"property refers to undeclared elementary property {name!r}"))
    if any(d.severity == "error" for d in diags) or not spec.transitions:
        return diags
    try:
        derive_ts(spec)
    except NotTotal as exc:
        severity = "error" if uses_af(desugar(Not(spec.property))) else "warning"
        diags.append(Diagnostic(severity, str(exc)))
    except SizeLimit as exc:
        diags.append(Diagnostic("warning", str(exc)))
    return diags
