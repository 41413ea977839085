"""Generalization operators: how the specializer generalizes.

Each operator takes the constraint ``c`` of an ancestor definition and the
constraint ``d`` of a new candidate and returns a constraint entailed by
``d`` that is no larger than ``c`` in the operator's thin ordering.  Results
are always stripped of redundant atoms.
"""

from __future__ import annotations

from enum import Enum

from .constraints import (TRUE, Constraint, InvalidInput, convex_hull, entails,
                          remove_redundant, satisfiable)
from .firing import Firing, fires


class GenOp(Enum):
    TOP = "top"
    W = "w"
    WM = "wm"
    WS = "ws"
    CHM = "chm"
    CHS = "chs"
    CHWM = "chwm"
    CHWS = "chws"

    @classmethod
    def parse(cls, text: str) -> "GenOp":
        return cls(text.strip().lower())

    @property
    def ordering(self) -> Firing | None:
        """The thin wqo the operator is certified against (None: any of them)."""
        if self in (GenOp.WM, GenOp.CHM, GenOp.CHWM):
            return Firing.MAXCOEFF
        if self in (GenOp.WS, GenOp.CHS, GenOp.CHWS):
            return Firing.SUMCOEFF
        return None


def widen(c: Constraint, d: Constraint) -> list:
    """Atoms of ``c`` entailed by ``d``."""
    return [a for a in c.atoms if entails(d, Constraint((a,)))]


def below(c: Constraint, d: Constraint, tag: Firing) -> list:
    """Atoms ``b`` of ``d`` such that the singleton ``{b}`` is below ``c``."""
    return [b for b in d.atoms if fires(tag, Constraint((b,)), c)]


def widen_with(c: Constraint, d: Constraint, tag: Firing) -> Constraint:
    """Widening plus the atoms of ``d`` that are ``tag``-below ``c``.

    With MAXCOEFF/SUMCOEFF this is WidenMax/WidenSum; with HOMEOCOEFF it is the
    combination that fails to be a generalization operator.
    """
    return remove_redundant(Constraint.of(widen(c, d) + below(c, d, tag)))


def generalize(op: GenOp, c: Constraint, d: Constraint) -> Constraint:
    if not satisfiable(c) or not satisfiable(d):
        raise InvalidInput("generalization of an unsatisfiable constraint")
    if op is GenOp.TOP:
        return TRUE
    if op is GenOp.W:
        return remove_redundant(Constraint.of(widen(c, d)))
    if op is GenOp.WM:
        return widen_with(c, d, Firing.MAXCOEFF)
    if op is GenOp.WS:
        return widen_with(c, d, Firing.SUMCOEFF)
    hull = convex_hull(c, d)
    if op is GenOp.CHM:
        return remove_redundant(Constraint.of(below(c, hull, Firing.MAXCOEFF)))
    if op is GenOp.CHS:
        return remove_redundant(Constraint.of(below(c, hull, Firing.SUMCOEFF)))
    if op is GenOp.CHWM:
        return widen_with(c, hull, Firing.MAXCOEFF)
    return widen_with(c, hull, Firing.SUMCOEFF)
