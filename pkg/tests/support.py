"""Small helpers shared by the test modules."""

import itertools

from specmc.cli import corpus_dir
from specmc.constraints import Constraint, conj, entails, make_atom
from specmc.specializer import Def, NegDef, SpecClause
from specmc.syntax import parse_constraint

from oracles import GroundClause, random_atom

NAMES = [f"X{i}" for i in range(1, 9)]


def corpus_path(stem: str):
    return corpus_dir() / f"{stem}.spec"


def corpus_text(stem: str) -> str:
    return corpus_path(stem).read_text()


def clause(head, head_vars, constraint, *body):
    """Expected clause; body items are ``(pred, vars)`` or ``("~pred", vars)``."""
    c = parse_constraint(constraint, NAMES) if constraint != "true" else None
    return head, tuple(head_vars), c, tuple(body)


def _body(cl):
    return tuple(((f"~{lit.pred}" if isinstance(lit, NegDef) else lit.pred), lit.state)
                 for lit in cl.body if isinstance(lit, (Def, NegDef)))


def _same_constraint(a, b):
    if b is None:
        return a.is_true
    return entails(a, b) and entails(b, a)


def same_program(clauses, expected) -> bool:
    """Equal modulo renaming of the ``new*`` predicates and constraint equivalence."""
    ours = sorted({cl.head for cl in clauses} - {"prop", "negprop"})
    theirs = sorted({e[0] for e in expected} - {"prop", "negprop"})
    if len(ours) != len(theirs) or len(clauses) != len(expected):
        return False
    for perm in itertools.permutations(ours):
        ren = dict(zip(theirs, perm))

        def rn(p):
            neg = p.startswith("~")
            q = ren.get(p.lstrip("~"), p.lstrip("~"))
            return f"~{q}" if neg else q

        free = list(clauses)
        ok = True
        for head, hv, c, body in expected:
            want = (rn(head), hv, tuple((rn(p), tuple(v)) for p, v in body))
            hit = next((cl for cl in free
                        if (cl.head, cl.head_vars, _body(cl)) == want
                        and _same_constraint(cl.constraint, c)), None)
            if hit is None:
                ok = False
                break
            free.remove(hit)
        if ok:
            return True
    return False


# the specialized program of the running example, with Widen
RUNNING_PROGRAM = [
    clause("prop", (), "true", ("~negprop", ())),
    clause("negprop", (), "X1 <= 0, X2 = 0", ("new1", (0, 1))),
    clause("new1", (0, 1), "X1 <= 0, X2 = 0, X3 = X1, X4 = 1", ("new2", (2, 3))),
    clause("new2", (0, 1), "X1 <= 0, X2 >= 0, X3 = X1, X4 = X2 + 1", ("new2", (2, 3))),
]


# -- random stratified programs over a box ------------------------------------------

def box_constraint(k, lo, hi):
    atoms = []
    for v in range(k):
        atoms += [make_atom({v: -1}, lo), make_atom({v: 1}, -hi)]
    return Constraint.of(atoms)


def raw_constraint(atoms, k):
    return Constraint.of([make_atom({v: q for v, q in enumerate(co)}, k0, s) for co, k0, s in atoms])


def covered_points(cs, pts):
    return {p for p in pts if any(c.evaluate(dict(enumerate(p))) for c in cs)}


def random_program(rng):
    """Stratified ground program over a small box, as oracle ``GroundClause`` values."""
    k = rng.randint(1, 2)
    lo, hi = -3, 3
    preds = [f"p{i}" for i in range(rng.randint(2, 4))]
    levels = {p: min(i, rng.randint(0, 2)) for i, p in enumerate(preds)}
    clauses = []
    for head in preds:
        for _ in range(rng.randint(1, 2)):
            atoms = [random_atom(rng, k, 3) for _ in range(rng.randint(0, 2))]
            body = []
            for _ in range(rng.randint(0, 2)):
                neg = rng.random() < 0.4
                cands = [p for p in preds if (levels[p] < levels[head] if neg else levels[p] <= levels[head])]
                if not cands:
                    continue
                shift = tuple(rng.randint(-1, 1) for _ in range(k))
                body.append((rng.choice(cands), shift, neg))
            clauses.append(GroundClause(head, atoms, body))
    return k, lo, hi, levels, clauses


def to_spec_clauses(k, lo, hi, clauses):
    """The same program as constrained clauses; body literal ``i`` reads ``x + shift``."""
    box = box_constraint(k, lo, hi)
    out = []
    for g in clauses:
        head = tuple(range(k))
        c = conj(box, raw_constraint(g.atoms, k)) if g.atoms else box
        body = []
        nxt = k
        for pred, shift, neg in g.body:
            y = tuple(range(nxt, nxt + k))
            nxt += k
            for i in range(k):
                c = conj(c, Constraint.of([make_atom({y[i]: 1, i: -1}, -shift[i]),
                                           make_atom({y[i]: -1, i: 1}, shift[i])]))
            body.append(NegDef(pred, y) if neg else Def(pred, y))
        out.append(SpecClause(g.head, head, c, tuple(body)))
    return out
