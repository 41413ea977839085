"""Firing relations: when the specializer should generalize.

All four relations are well-binary on conjunctions of linear atoms.  The
coefficient-based ones compare atoms of the same kind (strict with strict,
non-strict with non-strict) by a measure over the absolute values of their
integer coefficients, constant term included.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Sequence

from .constraints import Atom, Constraint, maxcoeff, sumcoeff


class Firing(Enum):
    ALWAYS = "always"
    MAXCOEFF = "maxcoeff"
    SUMCOEFF = "sumcoeff"
    HOMEOCOEFF = "homeocoeff"

    @classmethod
    def parse(cls, text: str) -> "Firing":
        return cls(text.strip().lower())


def _magnitudes(a: Atom) -> list[int]:
    values = [abs(a.const)] + [abs(q) for _, q in a.coeffs]
    return [v for v in values if v]


def has_matching(n_left: int, n_right: int, edge: Callable[[int, int], bool]) -> bool:
    """True iff every left vertex can be matched to a distinct right vertex."""
    if n_left > n_right:
        return False
    adj = [[j for j in range(n_right) if edge(i, j)] for i in range(n_left)]
    owner = [-1] * n_right

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return all(augment(i, [False] * n_right) for i in range(n_left))


def homeo_leq(q: Sequence[int], r: Sequence[int]) -> bool:
    """Some permutation maps each |q_i| onto a position of r at least as large.

    Zero entries of ``q`` fit anywhere, so only the non-zero ones need a
    distinct dominating partner.
    """
    q = [abs(x) for x in q if x]
    r = [abs(x) for x in r if x]
    return has_matching(len(q), len(r), lambda i, j: q[i] <= r[j])


def atomic_rel(tag: Firing, a1: Atom, a2: Atom) -> bool:
    if tag is Firing.ALWAYS:
        return True
    if a1.strict != a2.strict:
        return False
    if tag is Firing.MAXCOEFF:
        return maxcoeff(a1) <= maxcoeff(a2)
    if tag is Firing.SUMCOEFF:
        return sumcoeff(a1) <= sumcoeff(a2)
    return homeo_leq(_magnitudes(a1), _magnitudes(a2))


def fires(tag: Firing, c1: Constraint, c2: Constraint) -> bool:
    """Whether ``c1`` is below ``c2`` in the relation named by ``tag``."""
    if tag is Firing.ALWAYS:
        return True
    left, right = c1.atoms, c2.atoms
    if tag is Firing.HOMEOCOEFF:
        return has_matching(len(left), len(right),
                            lambda i, j: atomic_rel(tag, left[i], right[j]))
    return all(any(atomic_rel(tag, a, b) for b in right) for a in left)
