"""Conjunctions of linear inequalities over the rationals.

Every atom is stored as ``const + sum(coef * var) <op> 0`` with integer
coefficients divided through by their gcd, ``op`` being ``<=`` or ``<``.
Variables are plain non-negative integers; what they stand for is decided by
whoever builds the constraint (state tuples, clause variables, ...).

Satisfiability and projection use Fourier-Motzkin elimination.  Equalities
(pairs ``p <= 0, -p <= 0``) are eliminated by substitution before falling
back to the pairwise combination step, and parallel atoms are pruned after
every step, which keeps the blow-up manageable at the sizes a verification
run produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


class InvalidInput(ValueError):
    """Raised when an operation receives an unsatisfiable operand it cannot handle."""


def _gcd(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


@dataclass(frozen=True)
class Atom:
    """``const + sum(coef * var) <= 0`` (or ``< 0`` when ``strict``)."""

    coeffs: tuple[tuple[int, int], ...]
    const: int
    strict: bool = False

    def coeff(self, var: int) -> int:
        for v, q in self.coeffs:
            if v == var:
                return q
        return 0

    @property
    def vars(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.coeffs)

    def negate(self) -> "Atom":
        """The complement: not(p <= 0) is -p < 0, not(p < 0) is -p <= 0."""
        return Atom(tuple((v, -q) for v, q in self.coeffs), -self.const, not self.strict)

    def closed(self) -> "Atom":
        return Atom(self.coeffs, self.const, False) if self.strict else self

    def evaluate(self, point: Mapping[int, Fraction | int]) -> bool:
        total = self.const + sum(q * point[v] for v, q in self.coeffs)
        return total < 0 if self.strict else total <= 0

    def format(self, names: Mapping[int, str] | None = None) -> str:
        parts = []
        if self.const or not self.coeffs:
            parts.append(str(self.const))
        for v, q in self.coeffs:
            name = names[v] if names is not None and v in names else f"X{v + 1}"
            if q == 1:
                term = name
            elif q == -1:
                term = f"-{name}"
            else:
                term = f"{q}*{name}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        return "".join(parts) + (" < 0" if self.strict else " <= 0")

    def __str__(self) -> str:
        return self.format()


# The single atom standing for an unsatisfiable conjunction.
FALSE_ATOM = Atom((), 1, False)


def make_atom(coeffs: Mapping[int, int | Fraction], const: int | Fraction = 0,
              strict: bool = False) -> Atom | bool:
    """Normalize a linear inequation.

    Returns True/False for variable-free inequations that hold/fail, otherwise
    an Atom with integer coprime coefficients.
    """
    items = [(v, Fraction(q)) for v, q in coeffs.items() if q]
    const = Fraction(const)
    if not items:
        if strict:
            return const < 0
        return const <= 0
    denom = 1
    for _, q in items:
        denom = denom * q.denominator // math.gcd(denom, q.denominator)
    denom = denom * const.denominator // math.gcd(denom, const.denominator)
    ints = sorted((v, int(q * denom)) for v, q in items)
    iconst = int(const * denom)
    g = _gcd([abs(q) for _, q in ints] + [abs(iconst)])
    return Atom(tuple((v, q // g) for v, q in ints), iconst // g, strict)


def _sort_key(atom: Atom):
    """Orders like (strict, dense coefficient vector, const) without densifying.

    At the first variable where two dense vectors differ, the one holding the
    larger value wins; an absent entry is a zero.  Each sparse entry maps to
    (sign, -sign * var, coef) and a (0, 0, 0) terminator stands for the
    all-zero tail, which makes plain tuple comparison agree with the dense one.
    """
    sparse = tuple((1 if q > 0 else -1, -v if q > 0 else v, q) for v, q in atom.coeffs)
    return (atom.strict, sparse + ((0, 0, 0),), atom.const)


@dataclass(frozen=True)
class Constraint:
    """A canonical conjunction of atoms; the empty conjunction is true."""

    atoms: tuple[Atom, ...] = ()

    @staticmethod
    def of(atoms: Iterable[Atom | bool]) -> "Constraint":
        kept = set()
        for a in atoms:
            if a is True:
                continue
            if a is False or a == FALSE_ATOM:
                return FALSE
            kept.add(a)
        if not kept:
            return TRUE
        return Constraint(tuple(sorted(kept, key=_sort_key)))

    @property
    def is_false(self) -> bool:
        return self.atoms == (FALSE_ATOM,)

    @property
    def is_true(self) -> bool:
        return not self.atoms

    @property
    def vars(self) -> frozenset[int]:
        out: set[int] = set()
        for a in self.atoms:
            out.update(v for v, _ in a.coeffs)
        return frozenset(out)

    def __and__(self, other: "Constraint") -> "Constraint":
        if self.is_false or other.is_false:
            return FALSE
        return Constraint.of(self.atoms + other.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def rename(self, mapping: Mapping[int, int]) -> "Constraint":
        """Apply an injective variable renaming; unmapped variables stay put."""
        if self.is_false:
            return self
        atoms = []
        for a in self.atoms:
            coeffs = tuple(sorted((mapping.get(v, v), q) for v, q in a.coeffs))
            atoms.append(Atom(coeffs, a.const, a.strict))
        return Constraint.of(atoms)

    def evaluate(self, point: Mapping[int, Fraction | int]) -> bool:
        return all(a.evaluate(point) for a in self.atoms)

    def format(self, names: Mapping[int, str] | None = None) -> str:
        if self.is_false:
            return "false"
        if not self.atoms:
            return "true"
        return ", ".join(a.format(names) for a in self.atoms)

    def __str__(self) -> str:
        return self.format()


TRUE = Constraint(())
FALSE = Constraint((FALSE_ATOM,))


def conj(*cs: Constraint) -> Constraint:
    atoms: list[Atom] = []
    for c in cs:
        if c.is_false:
            return FALSE
        atoms.extend(c.atoms)
    return Constraint.of(atoms)


def eq(coeffs: Mapping[int, int | Fraction], const: int | Fraction = 0) -> Constraint:
    """``const + sum(coef * var) = 0`` as two inequations."""
    neg = {v: -q for v, q in coeffs.items()}
    return Constraint.of([make_atom(coeffs, const), make_atom(neg, -const)])


def leq(coeffs: Mapping[int, int | Fraction], const: int | Fraction = 0,
        strict: bool = False) -> Constraint:
    """``const + sum(coef * var) <= 0`` (``< 0`` if strict)."""
    return Constraint.of([make_atom(coeffs, const, strict)])


def canonicalize(c: Constraint) -> Constraint:
    """Re-normalize every atom; constraints built through ``Constraint.of`` are already canonical."""
    if c.is_false:
        return c
    out = []
    for a in c.atoms:
        out.append(make_atom(dict(a.coeffs), a.const, a.strict))
    return Constraint.of(out)


# ---------------------------------------------------------------------------
# Fourier-Motzkin core.  Rows are (coeff dict, const, strict) triples.

_Row = tuple[dict, int, bool]


def _row(atom: Atom) -> _Row:
    return dict(atom.coeffs), atom.const, atom.strict


def _norm_row(coeffs: dict, const: int, strict: bool):
    coeffs = {v: q for v, q in coeffs.items() if q}
    if not coeffs:
        return (const < 0) if strict else (const <= 0)
    g = _gcd([abs(q) for q in coeffs.values()] + [abs(const)])
    if g != 1:
        coeffs = {v: q // g for v, q in coeffs.items()}
        const //= g
    return coeffs, const, strict


def _prune(rows: list[_Row]) -> list[_Row] | None:
    """Keep the tightest of each family of parallel rows; None if a pair clashes."""
    # bound of a row is const / g, kept as the integer pair (const, g)
    best: dict[tuple, tuple[int, int, bool, _Row]] = {}
    for row in rows:
        coeffs, const, strict = row
        g = _gcd(abs(q) for q in coeffs.values())
        key = frozenset((v, q // g) for v, q in coeffs.items())
        cur = best.get(key)
        if cur is None:
            best[key] = (const, g, strict, row)
            continue
        lhs, rhs = const * cur[1], cur[0] * g
        if lhs > rhs or (lhs == rhs and strict and not cur[2]):
            best[key] = (const, g, strict, row)
    for key, (k1, g1, s1, _) in best.items():
        other = best.get(frozenset((v, -q) for v, q in key))
        if other is not None:
            # a.x + b1 <= 0 and -a.x + b2 <= 0 need b1 + b2 <= 0
            k2, g2, s2, _ = other
            total = k1 * g2 + k2 * g1
            if total > 0 or (total == 0 and (s1 or s2)):
                return None
    return [entry[3] for entry in best.values()]


def _equalities(rows: list[_Row]) -> dict[int, tuple[int, int]]:
    """For each variable, the first pair of rows ``p <= 0, -p <= 0`` mentioning it."""
    nonstrict = {}
    keys = []
    for i, (coeffs, const, strict) in enumerate(rows):
        key = None if strict else (frozenset(coeffs.items()), const)
        keys.append(key)
        if key is not None:
            nonstrict.setdefault(key, i)
    out: dict[int, tuple[int, int]] = {}
    for i, key in enumerate(keys):
        if key is None:
            continue
        j = nonstrict.get((frozenset((v, -q) for v, q in key[0]), -key[1]))
        if j is None:
            continue
        for v, _ in key[0]:
            out.setdefault(v, (i, j))
    return out


def _find_equality(rows: list[_Row], var: int):
    """Index pair of a non-strict row on ``var`` whose negation is also present."""
    return _equalities(rows).get(var)


def _eliminate_var(rows: list[_Row], var: int, found=None) -> list[_Row] | None:
    if found is None:
        found = _find_equality(rows, var)
    out: list[_Row] = []
    if found is not None:
        i, j = found
        e_coeffs, e_const, _ = rows[i]
        ev = e_coeffs[var]
        sign = 1 if ev > 0 else -1
        for k, (coeffs, const, strict) in enumerate(rows):
            if k in (i, j):
                continue
            q = coeffs.get(var, 0)
            if not q:
                out.append((coeffs, const, strict))
                continue
            new = {v: abs(ev) * c for v, c in coeffs.items()}
            for v, c in e_coeffs.items():
                new[v] = new.get(v, 0) - sign * q * c
            r = _norm_row(new, abs(ev) * const - sign * q * e_const, strict)
            if r is False:
                return None
            if r is not True:
                out.append(r)
        return _prune(out)
    pos, neg = [], []
    for row in rows:
        q = row[0].get(var, 0)
        if q > 0:
            pos.append(row)
        elif q < 0:
            neg.append(row)
        else:
            out.append(row)
    for pc, pk, ps in pos:
        a = pc[var]
        for nc, nk, ns in neg:
            b = -nc[var]
            new = {v: b * c for v, c in pc.items()}
            for v, c in nc.items():
                new[v] = new.get(v, 0) + a * c
            r = _norm_row(new, b * pk + a * nk, ps or ns)
            if r is False:
                return None
            if r is not True:
                out.append(r)
    return _prune(out)


def _cheapest(rows: list[_Row], candidates: list[int]):
    """Variable to eliminate next: one with an equality if possible, else min p*n - p - n."""
    eqs = _equalities(rows)
    with_eq = [v for v in candidates if v in eqs]
    if with_eq:
        var = max(with_eq)
        return var, eqs[var]
    pos: dict[int, int] = {}
    neg: dict[int, int] = {}
    for coeffs, _, _ in rows:
        for v, q in coeffs.items():
            if q > 0:
                pos[v] = pos.get(v, 0) + 1
            else:
                neg[v] = neg.get(v, 0) + 1
    def cost(v):
        p, n = pos.get(v, 0), neg.get(v, 0)
        return (p * n - p - n, -v)
    return min(candidates, key=cost), None


def _eliminate(rows: list[_Row], drop: Iterable[int], ordered: bool) -> list[_Row] | None:
    """Eliminate ``drop``; in descending order if ``ordered``, else cheapest first."""
    remaining = sorted(set(drop), reverse=True)
    while remaining:
        if ordered:
            var, found = remaining.pop(0), None
        else:
            var, found = _cheapest(rows, remaining)
            remaining.remove(var)
        rows = _eliminate_var(rows, var, found)
        if rows is None:
            return None
    return rows


def _rows_of(c: Constraint) -> list[_Row] | None:
    if c.is_false:
        return None
    return _prune([_row(a) for a in c.atoms])


def _to_constraint(rows: list[_Row] | None) -> Constraint:
    if rows is None:
        return FALSE
    return Constraint.of(Atom(tuple(sorted(c.items())), k, s) for c, k, s in rows)


def satisfiable(c: Constraint) -> bool:
    """True iff some rational point satisfies every atom of ``c``."""
    if c.is_false:
        return False
    return _sat_atoms(frozenset(c.atoms))


@lru_cache(maxsize=1 << 18)
def _sat_atoms(atoms: frozenset[Atom]) -> bool:
    if FALSE_ATOM in atoms:
        return False
    rows = _prune([_row(a) for a in atoms])
    if rows is None:
        return False
    drop = {v for a in atoms for v, _ in a.coeffs}
    return _eliminate(rows, drop, ordered=False) is not None


def entails(c: Constraint, d: Constraint) -> bool:
    """c entails d: every solution of c is a solution of d."""
    if c.is_false or not satisfiable(c):
        return True
    if d.is_false:
        return False
    own = frozenset(c.atoms)
    for a in d.atoms:
        if a in own:
            continue
        if _sat_atoms(own | {a.negate()}):
            return False
    return True


def equivalent(c: Constraint, d: Constraint) -> bool:
    return entails(c, d) and entails(d, c)


def project(c: Constraint, keep: Iterable[int], simplify: bool = True,
            ordered: bool = True) -> Constraint:
    """Existentially quantify every variable of ``c`` outside ``keep``.

    Variables are eliminated in descending index order, or cheapest first when
    ``ordered`` is off (same solution set, possibly different atoms).  With
    ``simplify`` the result is also stripped of redundant atoms.
    """
    keep = set(keep)
    rows = _rows_of(c)
    if rows is None:
        return FALSE
    drop = [v for v in c.vars if v not in keep]
    out = _to_constraint(_eliminate(rows, drop, ordered=ordered))
    if out.is_false:
        return out
    if simplify:
        return remove_redundant(out)
    return out if satisfiable(out) else FALSE


def remove_redundant(c: Constraint) -> Constraint:
    """Drop every atom implied by the others, testing atoms in sorted order."""
    if c.is_false or not satisfiable(c):
        return FALSE
    kept = list(c.atoms)
    for a in c.atoms:
        rest = [b for b in kept if b != a]
        if _has_free_direction(a, rest):
            continue
        if not _sat_atoms(frozenset(rest) | {a.negate()}):
            kept = rest
    return Constraint.of(kept)


def _has_free_direction(a: Atom, rest: list[Atom]) -> bool:
    """Some variable of ``a`` is unbounded in ``rest`` in the direction violating ``a``.

    When that holds (and ``rest`` is satisfiable) ``rest`` cannot entail ``a``.
    """
    for v, q in a.coeffs:
        if not any(b.coeff(v) * q > 0 for b in rest):
            return True
    return False


def closure(c: Constraint) -> Constraint:
    """Turn every strict atom into its non-strict counterpart."""
    if c.is_false:
        return c
    return Constraint.of(a.closed() for a in c.atoms)


def convex_hull(c: Constraint, d: Constraint) -> Constraint:
    """Closed convex hull of the solution sets of ``c`` and ``d``.

    Encodes x = z + (x - z) with z in lambda*closure(c) and x - z in
    (1 - lambda)*closure(d), then projects onto the original variables.  An
    atom of the result is strict only when both operands entail it strictly.
    """
    if not satisfiable(c) or not satisfiable(d):
        raise InvalidInput("convex hull of an unsatisfiable constraint")
    space = sorted(c.vars | d.vars)
    top = (max(space) + 1) if space else 0
    z = {v: top + i for i, v in enumerate(space)}
    lam = top + len(space)
    rows: list[Atom | bool] = []
    for a in closure(c).atoms:
        coeffs = {z[v]: q for v, q in a.coeffs}
        coeffs[lam] = coeffs.get(lam, 0) + a.const
        rows.append(make_atom(coeffs, 0))
    for a in closure(d).atoms:
        coeffs: dict[int, int] = {}
        for v, q in a.coeffs:
            coeffs[v] = coeffs.get(v, 0) + q
            coeffs[z[v]] = coeffs.get(z[v], 0) - q
        coeffs[lam] = coeffs.get(lam, 0) - a.const
        rows.append(make_atom(coeffs, a.const))
    rows.append(make_atom({lam: -1}, 0))
    rows.append(make_atom({lam: 1}, -1))
    lifted = Constraint.of(rows)
    # the normal form makes the result independent of the elimination order
    drop = [v for v in lifted.vars if v not in set(space)]
    hull = affine_normal_form(_to_constraint(_eliminate_chernikov(_rows_of(lifted), drop)))
    # a bound that both operands respect strictly stays strict
    atoms = []
    for a in hull.atoms:
        s = Atom(a.coeffs, a.const, True)
        one = Constraint((s,))
        atoms.append(s if entails(c, one) and entails(d, one) else a)
    return Constraint.of(atoms)


def _substitute_equalities(rows: list[_Row], drop: set[int]):
    """Eliminate every variable of ``drop`` that occurs in an equality pair."""
    drop = set(drop)
    while True:
        eqs = _equalities(rows)
        cands = [v for v in drop if v in eqs]
        if not cands:
            return rows, drop
        var = max(cands)
        drop.discard(var)
        rows = _eliminate_var(rows, var, eqs[var])
        if rows is None:
            return None, drop


def _dominates(row, g, k, kg, strict) -> bool:
    """Is parallel ``row`` (scale ``g``) at least as tight as bound ``k/kg``?"""
    lhs, rhs = row[1] * kg, k * g
    return lhs > rhs or (lhs == rhs and (row[2] or not strict))


def _eliminate_chernikov(rows: list[_Row], drop: Iterable[int]) -> list[_Row] | None:
    """Fourier-Motzkin with Chernikov's redundancy rule.

    Equalities are substituted out first and the result is treated as a new
    input system.  Each row then records the input rows it combines; after
    ``j`` eliminations a row built from more than ``j + 1`` inputs is implied
    by the others and is dropped.
    """
    rows, drop = _substitute_equalities(rows, drop)
    if rows is None:
        return None
    table = [(co, k, st, frozenset([i])) for i, (co, k, st) in enumerate(rows)]
    remaining = sorted(drop, reverse=True)
    done = 0
    while remaining:
        pos_n: dict[int, int] = {}
        neg_n: dict[int, int] = {}
        for co, _, _, _ in table:
            for v, q in co.items():
                if q > 0:
                    pos_n[v] = pos_n.get(v, 0) + 1
                else:
                    neg_n[v] = neg_n.get(v, 0) + 1

        def cost(v):
            p, n = pos_n.get(v, 0), neg_n.get(v, 0)
            return (p * n - p - n, -v)

        var = min(remaining, key=cost)
        remaining.remove(var)
        done += 1
        pos, neg, out = [], [], []
        for row in table:
            q = row[0].get(var, 0)
            (pos if q > 0 else neg if q < 0 else out).append(row)
        for pc, pk, ps, ph in pos:
            a = pc[var]
            for nc, nk, ns, nh in neg:
                hist = ph | nh
                if len(hist) > done + 1:
                    continue
                b = -nc[var]
                new = {v: b * x for v, x in pc.items()}
                for v, x in nc.items():
                    new[v] = new.get(v, 0) + a * x
                r = _norm_row(new, b * pk + a * nk, ps or ns)
                if r is False:
                    return None
                if r is not True:
                    out.append((r[0], r[1], r[2], hist))
        # drop a parallel row only when another is at least as tight and
        # built from a subset of its inputs, so no needed derivation is lost
        groups: dict[frozenset, list] = {}
        for row in out:
            g = _gcd(abs(q) for q in row[0].values())
            groups.setdefault(frozenset((v, q // g) for v, q in row[0].items()), []).append((row, g))
        table = []
        for members in groups.values():
            for i, ((co, k, st, h), g) in enumerate(members):
                if not any(_dominates(o, og, k, g, st) and o[3] <= h and (o[3] != h or j < i)
                           for j, (o, og) in enumerate(members) if j != i):
                    table.append(members[i][0])
        if _prune([row[:3] for row in table]) is None:
            return None
    return _prune([row[:3] for row in table])


def affine_normal_form(c: Constraint) -> Constraint:
    """Rewrite ``c`` so each equality is solved for its lowest-index variable.

    Implicit equalities are made explicit, the pivot variables are substituted
    out of every inequality, and the outcome is stripped of redundancy.  The
    bounds of a lower-dimensional polyhedron thus end up on the variables with
    the highest indices.
    """
    c = remove_redundant(c)
    if c.is_false or c.is_true:
        return c
    equalities: list[tuple[dict, int]] = []
    inequalities: list[_Row] = []
    for a in c.atoms:
        if not a.strict and entails(c, Constraint.of([a.negate().closed()])):
            equalities.append((dict(a.coeffs), a.const))
        else:
            inequalities.append(_row(a))
    pivots: list[tuple[int, dict, int]] = []
    pending = equalities
    while pending:
        pending = [(co, k) for co, k in pending if co]
        if not pending:
            break
        idx = min(range(len(pending)), key=lambda i: min(pending[i][0]))
        coeffs, const = pending.pop(idx)
        var = min(coeffs)
        pivots = [(pv, *_substitute(pc, pk, var, coeffs, const)) for pv, pc, pk in pivots]
        pending = [_substitute(co, k, var, coeffs, const) for co, k in pending]
        pivots.append((var, coeffs, const))
    for var, coeffs, const in pivots:
        inequalities = [(*_substitute(co, k, var, coeffs, const), s) for co, k, s in inequalities]
    atoms: list[Atom | bool] = []
    for _, coeffs, const in pivots:
        atoms.extend(eq(coeffs, const).atoms)
    for co, k, s in inequalities:
        atoms.append(make_atom(co, k, s))
    return remove_redundant(Constraint.of(atoms))


def _substitute(coeffs: dict, const: int, var: int, e_coeffs: dict, e_const: int):
    """Eliminate ``var`` from a row using the equality ``e_coeffs.x + e_const = 0``."""
    q = coeffs.get(var, 0)
    if not q:
        return coeffs, const
    ev = e_coeffs[var]
    sign = 1 if ev > 0 else -1
    new = {v: abs(ev) * c for v, c in coeffs.items()}
    for v, c in e_coeffs.items():
        new[v] = new.get(v, 0) - sign * q * c
    new = {v: c for v, c in new.items() if c}
    return new, abs(ev) * const - sign * q * e_const


def maxcoeff(a: Atom) -> int:
    return max([abs(a.const)] + [abs(q) for _, q in a.coeffs])


def sumcoeff(a: Atom) -> int:
    return abs(a.const) + sum(abs(q) for _, q in a.coeffs)


def negate_conjunction(c: Constraint) -> list[Constraint]:
    """Pairwise disjoint pieces whose union is the complement of ``c``.

    Piece i is ``a_1, ..., a_{i-1}, not a_i``.
    """
    if c.is_false:
        return [TRUE]
    pieces = []
    prefix: list[Atom] = []
    for a in c.atoms:
        pieces.append(Constraint.of(prefix + [a.negate()]))
        prefix.append(a)
    return pieces


def sample_point(c: Constraint) -> dict[int, Fraction] | None:
    """A rational solution of ``c`` found by back-substitution, or None."""
    rows = _rows_of(c)
    if rows is None:
        return None
    order = sorted(c.vars)
    stages = [rows]
    for v in reversed(order):
        rows = _eliminate_var_plain(rows, v)
        if rows is None:
            return None
        stages.append(rows)
    point: dict[int, Fraction] = {}
    for idx, v in enumerate(order):
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for coeffs, const, strict in stages[len(order) - 1 - idx]:
            q = coeffs.get(v, 0)
            if not q:
                continue
            rest = const + sum(c2 * point[u] for u, c2 in coeffs.items() if u != v)
            bound = Fraction(-rest, q)
            if q > 0:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
            else:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi - 1 if hi_strict else hi
        elif hi is None:
            val = lo + 1 if lo_strict else lo
        elif lo_strict or hi_strict:
            val = (lo + hi) / 2
        else:
            val = lo
        point[v] = val
    return point


def _eliminate_var_plain(rows: list[_Row], var: int) -> list[_Row] | None:
    """Plain Fourier-Motzkin step (no substitution) so that back-substitution stays valid."""
    out, pos, neg = [], [], []
    for row in rows:
        q = row[0].get(var, 0)
        (pos if q > 0 else neg if q < 0 else out).append(row)
    for pc, pk, ps in pos:
        a = pc[var]
        for nc, nk, ns in neg:
            b = -nc[var]
            new = {v: b * c for v, c in pc.items()}
            for v, c in nc.items():
                new[v] = new.get(v, 0) + a * c
            r = _norm_row(new, b * pk + a * nk, ps or ns)
            if r is False:
                return None
            if r is not True:
                out.append(r)
    return _prune(out)
