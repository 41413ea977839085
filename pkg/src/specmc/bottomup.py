"""Phase 2: perfect model of the specialized program from constrained facts.

A fact for a predicate of arity ``k`` is a constraint over ``0..k-1`` and
stands for all of its solutions.  Strata are evaluated bottom-up; within a
stratum the non-ground consequence operator is iterated naively until no new
fact survives the subsumption check.  Negated literals only ever refer to
completed lower strata, where they are evaluated by polyhedral complement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

from .constraints import (Constraint, conj, entails, negate_conjunction, project,
                          remove_redundant, satisfiable)
from .model import SizeLimit
from .specializer import ROOT, Def, NegDef, SpecClause, SpecializedProgram


class NotStratified(ValueError):
    """A predicate depends negatively on itself."""


class Diverged(RuntimeError):
    """The fixpoint iteration of a stratum did not converge within the limits."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Verdict(Enum):
    VERIFIED = "VERIFIED"
    VIOLATED = "VIOLATED"
    UNKNOWN = "UNKNOWN"


@dataclass
class Limits:
    max_iterations: int = 1000
    deadline: float | None = None
    max_disjuncts: int = 20000


@dataclass
class ModelTable:
    facts: dict[str, list[Constraint]] = field(default_factory=dict)
    complete: set[str] = field(default_factory=set)

    def get(self, pred: str) -> list[Constraint]:
        return self.facts.get(pred, [])

    def insert(self, pred: str, c: Constraint) -> bool:
        """Add ``c`` unless a single existing fact subsumes it; drop facts it subsumes."""
        old = self.facts.setdefault(pred, [])
        if any(entails(c, f) for f in old):
            return False
        self.facts[pred] = [f for f in old if not entails(f, c)] + [c]
        return True

    def count(self) -> int:
        return sum(len(v) for v in self.facts.values())

    def dump(self, arity: dict[str, int] | None = None) -> str:
        lines = []
        for pred in sorted(self.facts, key=_pred_order):
            k = (arity or {}).get(pred, 0)
            args = ",".join(f"X{i + 1}" for i in range(k))
            head = f"{pred}({args})" if args else pred
            for f in self.facts[pred]:
                lines.append(f"{head} :- {f}")
        return "\n".join(lines) + ("\n" if lines else "")


def _pred_order(p: str):
    if p == "prop":
        return (0, 0)
    if p == ROOT:
        return (1, 0)
    return (2, int(p[3:])) if p.startswith("new") and p[3:].isdigit() else (3, p)


def stratify(clauses: list[SpecClause]) -> dict[str, int]:
    """Least levels such that negation always points strictly downwards."""
    preds = set()
    edges = []
    for cl in clauses:
        preds.add(cl.head)
        for lit in cl.body:
            preds.add(lit.pred)
            edges.append((cl.head, lit.pred, isinstance(lit, NegDef)))
    level = {p: 0 for p in preds}
    for _ in range(len(preds) + 1):
        changed = False
        for head, dep, negative in edges:
            need = level[dep] + (1 if negative else 0)
            if level[head] < need:
                level[head] = need
                changed = True
        if not changed:
            return level
    raise NotStratified("negative dependency cycle")


def negate_facts(facts: list[Constraint], context: Constraint,
                 max_disjuncts: int = 20000) -> list[Constraint]:
    """Pairwise disjoint constraints covering ``context`` minus the union of ``facts``."""
    current = [context] if satisfiable(context) else []
    for f in facts:
        nxt = []
        for c in current:
            if not satisfiable(conj(c, f)):
                nxt.append(c)
                continue
            for piece in negate_conjunction(f):
                x = conj(c, piece)
                if satisfiable(x):
                    nxt.append(x)
        if len(nxt) > max_disjuncts:
            raise SizeLimit(f"negation produced more than {max_disjuncts} disjuncts")
        current = nxt
    return [remove_redundant(c) for c in current]


def _instantiate(fact: Constraint, state: tuple[int, ...]) -> Constraint:
    return fact.rename({i: v for i, v in enumerate(state)})


def clause_consequences(cl: SpecClause, model: ModelTable, limits: Limits) -> list[Constraint]:
    partial = [cl.constraint]
    positives = [lit for lit in cl.body if isinstance(lit, Def)]
    negatives = [lit for lit in cl.body if isinstance(lit, NegDef)]
    for lit in positives:
        nxt = []
        for p in partial:
            for f in model.get(lit.pred):
                c = conj(p, _instantiate(f, lit.state))
                if satisfiable(c):
                    nxt.append(c)
        partial = nxt
        if not partial:
            return []
    for lit in negatives:
        assert lit.pred in model.complete, f"negation of incomplete predicate {lit.pred}"
        facts = [_instantiate(f, lit.state) for f in model.get(lit.pred)]
        nxt = []
        for p in partial:
            nxt.extend(negate_facts(facts, p, limits.max_disjuncts))
        partial = nxt
        if not partial:
            return []
    to_head = {v: i for i, v in enumerate(cl.head_vars)}
    return [project(p, cl.head_vars).rename(to_head) for p in partial]


def immediate_consequences(clauses: list[SpecClause], model: ModelTable,
                           limits: Limits | None = None) -> list[tuple[str, Constraint]]:
    limits = limits or Limits()
    out = []
    for cl in clauses:
        for c in clause_consequences(cl, model, limits):
            out.append((cl.head, c))
    return out


def fixpoint(clauses: list[SpecClause], model: ModelTable, limits: Limits) -> int:
    """Iterate one stratum to its least fixpoint; returns the number of rounds."""
    for rounds in range(1, limits.max_iterations + 1):
        if limits.deadline is not None and time.monotonic() > limits.deadline:
            raise Diverged("timeout")
        added = False
        for pred, c in immediate_consequences(clauses, model, limits):
            if model.insert(pred, c):
                added = True
        if not added:
            return rounds
    raise Diverged("bottomup-divergence")


@dataclass
class BottomUpResult:
    verdict: Verdict
    reason: str | None
    model: ModelTable
    strata: dict[str, int]


def bottom_up(program: SpecializedProgram | list[SpecClause], limits: Limits | None = None) -> BottomUpResult:
    limits = limits or Limits()
    clauses = program.clauses if isinstance(program, SpecializedProgram) else program
    levels = stratify(clauses)
    model = ModelTable()
    for lvl in sorted(set(levels.values())):
        preds = {p for p, l in levels.items() if l == lvl}
        stratum = [cl for cl in clauses if cl.head in preds]
        try:
            fixpoint(stratum, model, limits)
        except Diverged as exc:
            return BottomUpResult(Verdict.UNKNOWN, exc.reason, model, levels)
        except SizeLimit:
            return BottomUpResult(Verdict.UNKNOWN, "size-limit", model, levels)
        model.complete |= preds
    verdict = Verdict.VERIFIED if model.get("prop") else Verdict.VIOLATED
    return BottomUpResult(verdict, None, model, levels)
