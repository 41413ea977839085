import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from specmc.constraints import Atom, Constraint, make_atom, maxcoeff, sumcoeff
from specmc.firing import Firing, atomic_rel, fires, has_matching, homeo_leq
from specmc.syntax import parse_constraint

X = ["X1", "X2", "X3"]


def A(text):
    (a,) = parse_constraint(text, X).atoms
    return a


def C(text):
    return parse_constraint(text, X)


FIRING_CELLS = [
    ("1 - 2*X1 < 0", "3 + X1 < 0", {"always": True, "maxcoeff": True, "sumcoeff": True, "homeocoeff": True}),
    ("2 - 2*X1 + X2 < 0", "1 + 3*X1 < 0", {"always": True, "maxcoeff": True, "sumcoeff": False, "homeocoeff": False}),
    ("1 + 3*X1 < 0", "2 - 2*X1 + X2 < 0", {"always": True, "maxcoeff": False, "sumcoeff": True, "homeocoeff": False}),
]


@pytest.mark.parametrize("a1,a2,expected", FIRING_CELLS)
def test_firing_cells(a1, a2, expected):
    for tag in Firing:
        assert atomic_rel(tag, A(a1), A(a2)) is expected[tag.value], tag


def test_parse_names():
    assert Firing.parse("HomeoCoeff") is Firing.HOMEOCOEFF
    with pytest.raises(ValueError):
        Firing.parse("sometimes")


def test_strictness_separates_atoms():
    assert not atomic_rel(Firing.MAXCOEFF, A("X1 <= 0"), A("3*X1 < 0"))
    assert not atomic_rel(Firing.HOMEOCOEFF, A("X1 < 0"), A("3*X1 <= 0"))
    assert atomic_rel(Firing.ALWAYS, A("X1 < 0"), A("3*X1 <= 0"))


def test_constraint_level():
    assert fires(Firing.ALWAYS, C("X1 <= 0"), C("X2 >= 7, X3 < 1"))
    assert fires(Firing.MAXCOEFF, C("1 - 2*X1 < 0"), C("3 + X1 < 0"))
    # both atoms may map to the same dominating atom under M, not under H
    c1, c2 = C("X1 <= 0, -X1 <= 0"), C("X1 <= 0")
    assert fires(Firing.MAXCOEFF, c1, c2)
    assert not fires(Firing.HOMEOCOEFF, c1, c2)
    assert fires(Firing.HOMEOCOEFF, c2, c1)


def test_empty_constraint_is_below_everything():
    for tag in Firing:
        assert fires(tag, Constraint(()), C("X1 <= 0"))


def test_homeo_includes_constant_position():
    # |q| = (5, 1) vs |r| = (1, 5): a permutation must move the constant
    assert homeo_leq([5, 1], [1, 5])
    assert not homeo_leq([5, 5], [1, 5])


def test_matching_helper():
    assert has_matching(2, 2, lambda i, j: i != j)
    assert not has_matching(2, 1, lambda i, j: True)
    assert has_matching(0, 0, lambda i, j: False)


@st.composite
def atoms(draw, n=3, coef=4):
    while True:
        a = make_atom({v: draw(st.integers(-coef, coef)) for v in range(n)},
                      draw(st.integers(-coef, coef)), draw(st.booleans()))
        if isinstance(a, Atom):
            return a


@st.composite
def cons(draw):
    return Constraint.of(draw(st.lists(atoms(), min_size=0, max_size=4)))


@settings(max_examples=300, deadline=None)
@given(cons(), cons())
def test_containment_between_relations(c1, c2):
    if fires(Firing.HOMEOCOEFF, c1, c2):
        assert fires(Firing.MAXCOEFF, c1, c2) and fires(Firing.SUMCOEFF, c1, c2)
    for tag in Firing:
        if fires(tag, c1, c2):
            assert fires(Firing.ALWAYS, c1, c2)


@settings(max_examples=200, deadline=None)
@given(cons(), cons(), cons())
def test_reflexive_and_transitive(a, b, c):
    for tag in (Firing.MAXCOEFF, Firing.SUMCOEFF, Firing.HOMEOCOEFF):
        assert fires(tag, a, a)
        if fires(tag, a, b) and fires(tag, b, c):
            assert fires(tag, a, c)


def _all_atoms(n, bound):
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=n):
        for const in range(-bound, bound + 1):
            for strict in (False, True):
                a = make_atom(dict(enumerate(coeffs)), const, strict)
                if isinstance(a, Atom):
                    out.add(a)
    return out


@pytest.mark.parametrize("text", ["2 - 2*X1 + X2 < 0", "X1 <= 0", "1 + 3*X1 - X2 <= 0"])
def test_thinness_bounded(text):
    a = A(text)
    m = max(maxcoeff(a), 1)
    universe = _all_atoms(3, m + 1)
    mags = sorted(abs(q) for q in [a.const] + [q for _, q in a.coeffs] + [0] * (3 - len(a.coeffs)))
    for tag, predicted in [
        (Firing.MAXCOEFF, lambda b: b.strict == a.strict and maxcoeff(b) == maxcoeff(a)),
        (Firing.SUMCOEFF, lambda b: b.strict == a.strict and sumcoeff(b) == sumcoeff(a)),
        (Firing.HOMEOCOEFF, lambda b: b.strict == a.strict and sorted(
            abs(q) for q in [b.const] + [q for _, q in b.coeffs] + [0] * (3 - len(b.coeffs))) == mags),
    ]:
        cls = {b for b in universe if atomic_rel(tag, a, b) and atomic_rel(tag, b, a)}
        assert cls == {b for b in universe if predicted(b)}
        # every member has coefficients bounded by the measure, so the class is finite
        limit = sumcoeff(a)
        assert all(maxcoeff(b) <= limit for b in cls)
        assert a in cls


def test_well_binary_bounded():
    rng = random.Random(2024)
    for trial in range(5):
        seq = []
        for i in range(200):
            span = 1 + i // 20
            atoms_ = []
            for _ in range(rng.randint(1, 3)):
                a = make_atom({v: rng.randint(-span, span) for v in range(rng.randint(1, 3))},
                              rng.randint(-span, span), rng.random() < 0.5)
                if isinstance(a, Atom):
                    atoms_.append(a)
            seq.append(Constraint.of(atoms_))
        for tag in Firing:
            assert any(fires(tag, seq[i], seq[j]) for j in range(len(seq)) for i in range(j)), tag
