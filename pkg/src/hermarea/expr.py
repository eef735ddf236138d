"""Small infix language for valuations, polynomials and area measures.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "pi" | NAME ["[" INT ("," INT)* "]"] | "(" expr ")"

Generators: ``chi t s u`` and the polynomial families ``f[k] p[k] q[k]``
(kept as polynomials in s, t until an ``n`` is needed), ``t_hat s_hat
u_hat vol mu[k,q]`` (valuations), and ``B Gamma Delta N`` with ``[k,q]``
(area measures).  Products of valuations are Alesker products; a scalar may
multiply anything; division is by nonzero pi-monomial scalars only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .areamod import AreaMeasure, B, Gamma, delta_measure, null_measure, is_valid_area
from .poly import Coords, GradedPoly, convert, fu_f, poly_p, poly_q
from .scalars import PiScalar, as_scalar
from .valalg import Valuation, algebra, mu

__all__ = ["ExprError", "parse", "evaluate", "Value"]

Value = Union[PiScalar, GradedPoly, Valuation, AreaMeasure]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],]))")

POLY_GENS = {"chi", "t", "s", "u"}
POLY_FAMILIES = {"f", "p", "q"}
VAL_GENS = {"t_hat", "s_hat", "u_hat", "chi_hat", "vol"}
AREA_GENS = {"B", "Gamma", "Delta", "N"}


class ExprError(ValueError):
    """Parse or evaluation error; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(f"{message} at position {pos}" if pos is not None else message)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    toks = []
    i = 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if not m:
            j = i + len(text[i:]) - len(text[i:].lstrip())
            raise ExprError(f"unexpected character {text[j]!r}", j)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(Tok(kind, m.group(kind), start))
        i = m.end()
    toks.append(Tok("end", "", len(text)))
    return toks


# AST nodes are plain tuples: ("num", Fraction) ("pi",) ("gen", name, indices, pos)
# ("add"|"sub"|"mul"|"div", a, b, pos) ("neg", a) ("pow", a, exponent, pos)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Tok:
        return self.toks[self.i]

    def take(self, text: str | None = None, kind: str | None = None) -> Tok:
        tok = self.cur
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ExprError(f"expected {want}, found {got}", tok.pos)
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.cur.kind != "end":
            raise ExprError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return node

    def expr(self):
        node = self.term()
        while self.cur.text in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = ("add" if op.text == "+" else "sub", node, rhs, op.pos)
        return node

    def term(self):
        node = self.unary()
        while self.cur.text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = ("mul" if op.text == "*" else "div", node, rhs, op.pos)
        return node

    def unary(self):
        if self.cur.text == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.cur.text == "^":
            op = self.take()
            sign = 1
            if self.cur.text == "-":
                self.take()
                sign = -1
            e = int(self.take(kind="int").text)
            node = ("pow", node, sign * e, op.pos)
        return node

    def atom(self):
        tok = self.cur
        if tok.kind == "int":
            self.take()
            return ("num", Fraction(int(tok.text)))
        if tok.text == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok.kind == "name":
            self.take()
            if tok.text == "pi":
                return ("pi",)
            indices: tuple[int, ...] = ()
            if self.cur.text == "[":
                self.take()
                idx = [int(self.take(kind="int").text)]
                while self.cur.text == ",":
                    self.take()
                    idx.append(int(self.take(kind="int").text))
                self.take("]")
                indices = tuple(idx)
            return ("gen", tok.text, indices, tok.pos)
        got = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ExprError(f"unexpected {got}", tok.pos)


def parse(text: str):
    """Parse ``text`` to an AST; raises :class:`ExprError` with a position."""
    return _Parser(text).parse()


# -- evaluation ---------------------------------------------------------------


def _need_n(n: int | None, what: str, pos) -> int:
    if n is None:
        raise ExprError(f"{what} needs --n", pos)
    return n


def _arity(name: str, indices: tuple, want: int, pos) -> None:
    if len(indices) != want:
        shape = "" if want == 0 else "[" + ",".join("k q".split()[:want]) + "]"
        raise ExprError(f"{name} expects {want} index(es) ({name}{shape})", pos)


def _generator(name: str, indices: tuple, n: int | None, pos) -> Value:
    if name in POLY_GENS:
        _arity(name, indices, 0, pos)
        return {
            "chi": GradedPoly.constant(1),
            "t": GradedPoly(Coords.ST, {(0, 1): 1}),
            "s": GradedPoly(Coords.ST, {(1, 0): 1}),
            "u": GradedPoly(Coords.ST, {(1, 0): 4, (0, 2): -1}),
        }[name]
    if name in POLY_FAMILIES:
        _arity(name, indices, 1, pos)
        (k,) = indices
        fn = {"f": fu_f, "p": poly_p, "q": poly_q}[name]
        if k < (1 if name == "f" else 0):
            raise ExprError(f"{name}[{k}] is undefined", pos)
        return fn(k, Coords.ST)
    if name in VAL_GENS:
        _arity(name, indices, 0, pos)
        return algebra(_need_n(n, name, pos)).special(name)
    if name == "mu":
        _arity(name, indices, 2, pos)
        n = _need_n(n, name, pos)
        try:
            return mu(n, *indices)
        except ValueError as exc:
            if isinstance(exc, ExprError):
                raise
            raise ExprError(str(exc), pos) from None
    if name in AREA_GENS:
        _arity(name, indices, 2, pos)
        n = _need_n(n, name, pos)
        k, q = indices
        try:
            if name == "B":
                return B(n, k, q)
            if name == "Gamma":
                return Gamma(n, k, q)
            if not (is_valid_area(n, "B", k, q) or is_valid_area(n, "Gamma", k, q)):
                raise ValueError(f"{name}[{k},{q}] is not a valid index for n={n}")
            if name == "Delta":
                return delta_measure(n, k, q)
            if not (is_valid_area(n, "B", k, q) and is_valid_area(n, "Gamma", k, q)):
                raise ValueError(f"N[{k},{q}] needs both B[{k},{q}] and Gamma[{k},{q}] for n={n}")
            return null_measure(n, k, q)
        except ValueError as exc:
            if isinstance(exc, ExprError):
                raise
            raise ExprError(str(exc), pos) from None
    raise ExprError(f"unknown generator {name!r}", pos)


def _kind(v: Value) -> str:
    return {PiScalar: "scalar", GradedPoly: "poly", Valuation: "valuation", AreaMeasure: "measure"}[type(v)]


def to_valuation(v: Value, n: int | None, pos=None) -> Valuation:
    if isinstance(v, Valuation):
        return v
    n = _need_n(n, "a valuation", pos)
    if isinstance(v, PiScalar):
        return algebra(n).special("chi").scale(v)
    if isinstance(v, GradedPoly):
        return algebra(n).from_poly(convert(v, Coords.ST))
    raise ExprError(f"expected a valuation, got a {_kind(v)}", pos)


def _add(a: Value, b: Value, n, pos) -> Value:
    if type(a) is type(b):
        return a + b
    kinds = {_kind(a), _kind(b)}
    if "measure" in kinds:
        raise ExprError(f"cannot add a {_kind(a)} and a {_kind(b)}", pos)
    if kinds == {"scalar", "poly"}:
        p = a if isinstance(a, GradedPoly) else b
        c = b if p is a else a
        return p + GradedPoly.constant(c, p.coords)
    return to_valuation(a, n, pos) + to_valuation(b, n, pos)


def _mul(a: Value, b: Value, n, pos) -> Value:
    if isinstance(a, PiScalar) and isinstance(b, PiScalar):
        return a * b
    if isinstance(a, PiScalar):
        return b.scale(a) if not isinstance(b, GradedPoly) else b * a
    if isinstance(b, PiScalar):
        return a.scale(b) if not isinstance(a, GradedPoly) else a * b
    if isinstance(a, GradedPoly) and isinstance(b, GradedPoly):
        return a * b
    if isinstance(a, AreaMeasure) or isinstance(b, AreaMeasure):
        raise ExprError("area measures can only be scaled; use the act command for the module action", pos)
    va, vb = to_valuation(a, n, pos), to_valuation(b, n, pos)
    return algebra(va.n).product(va, vb)


def _eval(node, n):
    tag = node[0]
    if tag == "num":
        return PiScalar({0: node[1]})
    if tag == "pi":
        return PiScalar({1: 1})
    if tag == "gen":
        return _generator(node[1], node[2], n, node[3])
    if tag == "neg":
        v = _eval(node[1], n)
        return -v
    if tag in ("add", "sub"):
        a, b = _eval(node[1], n), _eval(node[2], n)
        return _add(a, -b if tag == "sub" else b, n, node[3])
    if tag == "mul":
        return _mul(_eval(node[1], n), _eval(node[2], n), n, node[3])
    if tag == "div":
        a, b = _eval(node[1], n), _eval(node[2], n)
        if not isinstance(b, PiScalar) or not b.is_monomial():
            raise ExprError("can only divide by a nonzero pi-monomial scalar", node[3])
        inv = PiScalar({0: 1}).div_monomial(b)
        return _mul(a, inv, n, node[3])
    if tag == "pow":
        base, e, pos = _eval(node[1], n), node[2], node[3]
        if isinstance(base, PiScalar):
            if e < 0:
                if not base.is_monomial():
                    raise ExprError("negative power of a non-monomial scalar", pos)
                return PiScalar({0: 1}).div_monomial(base) ** (-e)
            return base ** e
        if e < 0:
            raise ExprError("negative powers are only allowed for scalars", pos)
        if isinstance(base, GradedPoly):
            return base ** e
        if isinstance(base, AreaMeasure):
            raise ExprError("cannot take powers of an area measure", pos)
        out: Value = algebra(base.n).special("chi")
        for _ in range(e):
            out = algebra(base.n).product(out, base)
        return out
    raise AssertionError(tag)  # pragma: no cover


def evaluate(text: str, n: int | None = None) -> Value:
    """Parse and evaluate ``text``; ``n`` is required for valuations/measures."""
    return _eval(parse(text), n)


def evaluate_as(text: str, kind: str, n: int | None = None) -> Value:
    """Evaluate and coerce to ``kind`` in {"valuation", "measure", "poly"}."""
    v = evaluate(text, n)
    if kind == "valuation":
        return to_valuation(v, n)
    if kind == "measure":
        if isinstance(v, AreaMeasure):
            return v
        if isinstance(v, PiScalar) and not v:
            return AreaMeasure(_need_n(n, "a measure", None))
        raise ExprError(f"expected an area measure, got a {_kind(v)}")
    if kind == "poly":
        if isinstance(v, PiScalar):
            return GradedPoly.constant(v)
        if isinstance(v, GradedPoly):
            return v
        raise ExprError(f"expected a polynomial in s, t, u, got a {_kind(v)}")
    raise ValueError(kind)
