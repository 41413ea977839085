"""Text front end for system descriptions and constraints.

Grammar::

    spec  := "system" IDENT ";" "vars" IDENT ("," IDENT)* ";"
             ("init" constraint ";")+ ("trans" IDENT ":" constraint ";")+
             ("elem" IDENT ":" constraint ";")* "prop" ctl ";"
    ctl   := IDENT | "true" | OP "(" ctl ("," ctl)? ")"

Constraints are comma-separated (in)equations between linear expressions,
possibly chained (``0 <= x <= 2``).  Inside ``trans`` a primed name (``x'``)
is the next-state copy of ``x``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .constraints import Constraint, make_atom
from .model import (Af, Ag, And, Elem, ElemProp, Ef, Eg, Eu, Ex, Not, Or,
                    SystemSpec, Transition, validate)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line, self.col = line, col


class ValidationError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<num>\d+(\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<op><=|>=|=<|==|<|>|=|[-+*/(),;:])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.tok.line, self.tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            found = repr(t.text) if t.text else "end of input"
            raise self.error(f"expected {want}, found {found}")
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text

    # -- linear expressions -> (coeff dict, const) -----------------------------

    def expr(self, names: Mapping[str, int]):
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.take().text == "-" else 1
        coeffs, const = self.term(names)
        coeffs = {v: sign * q for v, q in coeffs.items()}
        const *= sign
        while self.at("+") or self.at("-"):
            s = 1 if self.take().text == "+" else -1
            c2, k2 = self.term(names)
            for v, q in c2.items():
                coeffs[v] = coeffs.get(v, 0) + s * q
            const += s * k2
        return coeffs, const

    def term(self, names):
        coeffs, const = self.factor(names)
        while self.at("*") or self.at("/"):
            op = self.take().text
            c2, k2 = self.factor(names)
            if op == "/":
                if c2:
                    raise self.error("division by a variable")
                if k2 == 0:
                    raise self.error("division by zero")
                coeffs = {v: q / k2 for v, q in coeffs.items()}
                const = const / k2
            elif not coeffs:
                coeffs = {v: const * q for v, q in c2.items()}
                const = const * k2
            elif not c2:
                coeffs = {v: k2 * q for v, q in coeffs.items()}
                const = const * k2
            else:
                raise self.error("non-linear product")
        return coeffs, const

    def factor(self, names):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return {}, Fraction(t.text)
        if t.kind == "ident":
            if t.text not in names:
                raise self.error(f"unknown variable {t.text!r}")
            self.i += 1
            return {names[t.text]: Fraction(1)}, Fraction(0)
        if t.text == "(":
            self.i += 1
            out = self.expr(names)
            self.take(")")
            return out
        if t.text == "-":
            self.i += 1
            coeffs, const = self.factor(names)
            return {v: -q for v, q in coeffs.items()}, -const
        raise self.error(f"unexpected {t.text or 'end of input'!r} in expression")

    def constraint(self, names: Mapping[str, int]) -> Constraint:
        atoms = []
        while True:
            lhs = self.expr(names)
            if self.tok.text not in ("<=", "=<", "<", ">=", ">", "=", "=="):
                raise self.error("expected a relation")
            while self.tok.text in ("<=", "=<", "<", ">=", ">", "=", "=="):
                rel = self.take().text
                rhs = self.expr(names)
                atoms.extend(_relate(lhs, rel, rhs))
                lhs = rhs
            if not self.at(","):
                break
            self.take(",")
        return Constraint.of(atoms)

    # -- CTL ---------------------------------------------------------------------

    _UNARY = {"not": Not, "ex": Ex, "af": Af, "ef": Ef, "eg": Eg, "ag": Ag}
    _BINARY = {"and": And, "eu": Eu, "or": Or}

    def ctl(self):
        t = self.take(kind="ident")
        name = t.text
        if name in self._UNARY and self.at("("):
            self.take("(")
            arg = self.ctl()
            self.take(")")
            return self._UNARY[name](arg)
        if name in self._BINARY and self.at("("):
            self.take("(")
            left = self.ctl()
            self.take(",")
            right = self.ctl()
            self.take(")")
            return self._BINARY[name](left, right)
        return Elem(name)

    # -- spec --------------------------------------------------------------------

    def spec(self) -> SystemSpec:
        self.take("system")
        name = self.take(kind="ident").text
        self.take(";")
        self.take("vars")
        vars_ = [self.take(kind="ident").text]
        while self.at(","):
            self.take(",")
            vars_.append(self.take(kind="ident").text)
        self.take(";")
        if len(set(vars_)) != len(vars_):
            raise self.error("duplicate variable name")
        here = {v: i for i, v in enumerate(vars_)}
        both = dict(here)
        both.update({v + "'": len(vars_) + i for i, v in enumerate(vars_)})
        inits, trans, elems = [], [], []
        if not self.at("init"):
            raise self.error("expected at least one 'init'")
        while self.at("init"):
            self.take("init")
            inits.append(self.constraint(here))
            self.take(";")
        if not self.at("trans"):
            raise self.error("expected at least one 'trans'")
        while self.at("trans"):
            self.take("trans")
            tname = self.take(kind="ident").text
            self.take(":")
            trans.append(Transition(tname, self.constraint(both)))
            self.take(";")
        while self.at("elem"):
            self.take("elem")
            ename = self.take(kind="ident").text
            self.take(":")
            elems.append(ElemProp(ename, self.constraint(here)))
            self.take(";")
        self.take("prop")
        prop = self.ctl()
        self.take(";")
        self.take(kind="eof")
        return SystemSpec(name, tuple(vars_), tuple(inits), tuple(trans), tuple(elems), prop)


def _relate(lhs, rel, rhs):
    """Atoms for ``lhs rel rhs`` as ``p <= 0`` / ``p < 0`` forms."""
    lc, lk = lhs
    rc, rk = rhs
    diff = dict(lc)
    for v, q in rc.items():
        diff[v] = diff.get(v, 0) - q
    const = lk - rk
    neg = {v: -q for v, q in diff.items()}
    if rel in ("<=", "=<"):
        return [make_atom(diff, const)]
    if rel == "<":
        return [make_atom(diff, const, True)]
    if rel == ">=":
        return [make_atom(neg, -const)]
    if rel == ">":
        return [make_atom(neg, -const, True)]
    return [make_atom(diff, const), make_atom(neg, -const)]


def parse_constraint(text: str, names: Mapping[str, int] | list[str]) -> Constraint:
    if not isinstance(names, Mapping):
        names = {n: i for i, n in enumerate(names)}
    p = _Parser(text)
    c = p.constraint(names)
    p.take(kind="eof")
    return c


def parse_formula(text: str):
    p = _Parser(text)
    f = p.ctl()
    p.take(kind="eof")
    return f


def parse_spec(text: str, check: bool = True) -> SystemSpec:
    """Parse a system description; with ``check`` reject specs that have errors."""
    spec = _Parser(text).spec()
    if check:
        errors = [d for d in validate(spec) if d.severity == "error"]
        if errors:
            raise ValidationError(errors)
    return spec
