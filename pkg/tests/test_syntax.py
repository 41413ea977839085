import pytest

from specmc.constraints import entails
from specmc.model import Elem, Eu, Not
from specmc.syntax import ParseError, ValidationError, parse_constraint, parse_formula, parse_spec

from support import corpus_path, corpus_text

NAMES = ["x", "y"]


def C(text):
    return parse_constraint(text, NAMES)


def equiv(a, b):
    return entails(a, b) and entails(b, a)


def test_example1_spec():
    spec = parse_spec(corpus_text("example1"))
    assert spec.vars == ("x1", "x2")
    assert len(spec.inits) == 1 and len(spec.transitions) == 2
    init = parse_constraint("x1 <= 0, x2 = 0", spec.vars)
    assert equiv(spec.inits[0], init)
    assert equiv(spec.elem("negative"), parse_constraint("x2 < 0", spec.vars))
    assert spec.property == Not(parse_formula("ef(negative)"))
    assert parse_formula("ef(negative)").arg == Elem("negative")


@pytest.mark.parametrize("text,same", [
    ("x <= 3", "x - 3 <= 0"),
    ("2*x + 1 > y", "y - 2*x - 1 < 0"),
    ("0 <= x <= 2", "-x <= 0, x - 2 <= 0"),
    ("x = y + 1", "x - y - 1 <= 0, y + 1 - x <= 0"),
    ("x/2 <= 1", "x <= 2"),
    ("-(x - y) >= 0", "x <= y"),
    ("3*(x + 1) < 2*y", "3*x + 3 - 2*y < 0"),
    ("x <= 0.5", "2*x <= 1"),
])
def test_constraint_forms(text, same):
    assert equiv(C(text), C(same))


def test_strictness_kept():
    (a,) = C("x < 1").atoms
    (b,) = C("x <= 1").atoms
    assert a.strict and not b.strict


@pytest.mark.parametrize("text", [
    "",
    "system s;",
    "system s; vars x; trans t: x' = x; prop true;",
    "system s; vars x, x; init x = 0; trans t: x' = x; prop true;",
    "system s; vars x; init x = 0; trans t: x' = x; prop ef(;",
    "system s; vars x; init x = 0 trans t: x' = x; prop true;",
    "system s; vars x; init x ** 2 = 0; trans t: x' = x; prop true;",
    "system s; vars x; init x*x = 0; trans t: x' = x; prop true;",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_spec(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_spec("system s;\nvars x;\ninit x = 0;\ntrans t: x' = x\nprop true;")
    assert err.value.line == 5


def test_undeclared_elem_is_validation_error():
    text = "system s; vars x; init x = 0; trans t: x' = x; prop ef(undeclared);"
    with pytest.raises(ValidationError) as err:
        parse_spec(text)
    assert "undeclared" in str(err.value)
    assert parse_spec(text, check=False).property.arg == Elem("undeclared")


def test_comments_and_primes():
    spec = parse_spec("# header\nsystem s; vars x;  # state\ninit x = 0;\n"
                      "trans t: x' = x + 1;\nprop eu(true, true);\n")
    assert spec.property == Eu(Elem("true"), Elem("true"))
    rel = spec.transitions[0].relation
    assert rel.evaluate({0: 0, 1: 1}) and not rel.evaluate({0: 0, 1: 2})


def test_bundled_corpus_parses():
    for stem in ["example1", "bakery2_safety", "bakery2_liveness", "ticket_safety",
                 "ticket_liveness", "peterson", "mesi"]:
        assert corpus_path(stem).exists()
        parse_spec(corpus_text(stem))
