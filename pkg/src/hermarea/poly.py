"""Graded polynomials in (s, t) or (t, u) and the generating-function families.

Grading: ``deg t = 1`` and ``deg s = deg u = 2``.  A term is keyed by
``(a, b)`` where ``a`` is the power of ``s`` (ST coordinates) or ``u`` (TU
coordinates) and ``b`` the power of ``t``.  The two coordinate systems are
related by ``u = 4s - t^2``.

The families

    log(1 + t x + s x^2)      = sum f_k x^k
    1 / (1 + t x + s x^2)     = sum p_k x^k
    -1 / (1 + t x + s x^2)^2  = sum q_k x^k

are produced by recurrences and cross-checked against their closed forms
in both coordinate systems when they are first built.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .scalars import ONE, PiScalar, ScalarLike, as_scalar

__all__ = [
    "Coords",
    "GradedPoly",
    "fu_f",
    "poly_p",
    "poly_q",
    "apply_diff",
    "convert",
    "binomial_identity",
    "s_var",
    "t_var",
    "u_var",
]


class Coords(str, Enum):
    ST = "st"
    TU = "tu"


Key = tuple[int, int]


class GradedPoly:
    """Immutable polynomial with PiScalar coefficients."""

    __slots__ = ("coords", "_terms")

    def __init__(self, coords: Coords | str, terms: Mapping[Key, ScalarLike] | None = None):
        self.coords = Coords(coords)
        clean: dict[Key, PiScalar] = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in term {(a, b)}")
            c = as_scalar(c)
            if c:
                clean[(a, b)] = c
        self._terms = clean

    @classmethod
    def constant(cls, c: ScalarLike, coords: Coords | str = Coords.ST) -> "GradedPoly":
        return cls(coords, {(0, 0): c})

    @classmethod
    def zero(cls, coords: Coords | str = Coords.ST) -> "GradedPoly":
        return cls(coords)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[Key, PiScalar]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, a: int, b: int) -> PiScalar:
        return self._terms.get((a, b), PiScalar())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {2 * a + b for a, b in self._terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def homogeneous_part(self, d: int) -> "GradedPoly":
        return GradedPoly(self.coords, {k: c for k, c in self._terms.items() if 2 * k[0] + k[1] == d})

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "GradedPoly") -> None:
        if self.coords is not other.coords:
            raise ValueError(f"coordinate mismatch: {self.coords.value} vs {other.coords.value}")

    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            self._check(other)
            return other
        return GradedPoly.constant(as_scalar(other), self.coords)

    def __add__(self, other) -> "GradedPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, PiScalar()) + c
        return GradedPoly(self.coords, out)

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.coords, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "GradedPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GradedPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            c = as_scalar(other)
            return GradedPoly(self.coords, {k: v * c for k, v in self._terms.items()})
        self._check(other)
        out: dict[Key, PiScalar] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, PiScalar()) + c1 * c2
        return GradedPoly(self.coords, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GradedPoly":
        result = GradedPoly.constant(1, self.coords)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.coords is other.coords and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.coords, frozenset(self._terms.items())))

    def convert(self, target: Coords | str) -> "GradedPoly":
        return convert(self, target)

    # -- rendering ----------------------------------------------------
    def __repr__(self) -> str:
        return f"GradedPoly({self.coords.value}, {self})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> dict:
        return {
            "coords": self.coords.value,
            "terms": [
                {"a": a, "b": b, "coeff": c.to_json()} for (a, b), c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedPoly":
        return cls(
            data["coords"],
            {(t["a"], t["b"]): PiScalar.from_json(t["coeff"]) for t in data["terms"]},
        )


def _monomial_name(coords: Coords, a: int, b: int) -> str:
    first = "s" if coords is Coords.ST else "u"
    parts = []
    for name, e in (("t", b), (first, a)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " * ".join(parts)


def format_poly(p: GradedPoly) -> str:
    # terms ordered by degree, then by increasing power of s/u
    items = sorted(p.items(), key=lambda kv: (2 * kv[0][0] + kv[0][1], kv[0][0]))
    if not items:
        return "0"
    pieces: list[str] = []
    for i, ((a, b), c) in enumerate(items):
        mono = _monomial_name(p.coords, a, b)
        neg = False
        if c.is_monomial():
            coeff, _ = c.monomial_parts()
            neg = coeff < 0
            scalar = str(-c if neg else c)
        else:
            scalar = f"({c})"
        if mono and scalar == "1":
            body = mono
        elif mono:
            body = f"{scalar} * {mono}"
        else:
            body = scalar
        if i == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


def s_var() -> GradedPoly:
    return GradedPoly(Coords.ST, {(1, 0): 1})


def t_var(coords: Coords | str = Coords.ST) -> GradedPoly:
    return GradedPoly(coords, {(0, 1): 1})


def u_var() -> GradedPoly:
    return GradedPoly(Coords.TU, {(1, 0): 1})


# -- coordinate change -------------------------------------------------


def convert(p: GradedPoly, target: Coords | str) -> GradedPoly:
    """Substitute ``u = 4s - t^2`` or ``s = (u + t^2)/4``."""
    target = Coords(target)
    if p.coords is target:
        return p
    if target is Coords.TU:
        # s -> (u + t^2)/4
        sub = GradedPoly(Coords.TU, {(1, 0): Fraction(1, 4), (0, 2): Fraction(1, 4)})
    else:
        # u -> 4s - t^2
        sub = GradedPoly(Coords.ST, {(1, 0): 4, (0, 2): -1})
    out = GradedPoly.zero(target)
    powers = [GradedPoly.constant(1, target)]
    for (a, b), c in p.items():
        while len(powers) <= a:
            powers.append(powers[-1] * sub)
        out = out + powers[a] * GradedPoly(target, {(0, b): c})
    return out


# -- differential operators (TU coordinates) ----------------------------


def apply_diff(op: str, p: GradedPoly) -> GradedPoly:
    """Apply ``d_t``, ``d_u``, ``t_d_t`` or ``u_d_u`` to a TU polynomial."""
    if p.coords is not Coords.TU:
        raise ValueError("differential operators act on (t, u) polynomials only")
    out: dict[Key, PiScalar] = {}
    for (a, b), c in p.items():
        if op == "d_t":
            if b:
                out[(a, b - 1)] = c * b
        elif op == "d_u":
            if a:
                out[(a - 1, b)] = c * a
        elif op == "t_d_t":
            out[(a, b)] = c * b
        elif op == "u_d_u":
            out[(a, b)] = c * a
        else:
            raise ValueError(f"unknown operator {op!r}")
    return GradedPoly(Coords.TU, out)


# -- generating-function families --------------------------------------


def _assert_homogeneous(p: GradedPoly, d: int, name: str) -> GradedPoly:
    if not p.is_homogeneous(d):
        raise AssertionError(f"{name} is not homogeneous of degree {d}: {p}")
    return p


@lru_cache(maxsize=None)
def _f_recurrence(k: int) -> GradedPoly:
    # (1 + t x + s x^2) * d/dx log(...) = t + 2 s x
    if k == 0:
        return GradedPoly.zero()
    if k == 1:
        return t_var()
    if k == 2:
        return GradedPoly(Coords.ST, {(1, 0): 1, (0, 2): Fraction(-1, 2)})
    t, s = t_var(), s_var()
    rhs = -(t * _f_recurrence(k - 1)) * (k - 1) - (s * _f_recurrence(k - 2)) * (k - 2)
    return rhs * Fraction(1, k)


def f_closed_st(k: int) -> GradedPoly:
    """``(-1)^(k+1) sum_q (-1)^q C(k-q-1, q)/(k-2q) s^q t^(k-2q)``.

    At ``k = 2q`` the quotient is 0/0; its value there is
    ``C(k-q, q)/(k-q) = 1/q``, the coefficient of ``s^q`` in ``log(1+s)``.
    """
    terms = {}
    for q in range(k // 2 + 1):
        if k == 2 * q:
            c = Fraction(comb(k - q, q), k - q)
        else:
            c = Fraction(comb(k - q - 1, q), k - 2 * q)
        terms[(q, k - 2 * q)] = (-1) ** (k + 1 + q) * c
    return GradedPoly(Coords.ST, terms)


def f_closed_tu(k: int) -> GradedPoly:
    scale = Fraction(1, k * (-2) ** (k - 1))
    return GradedPoly(
        Coords.TU,
        {(q, k - 2 * q): scale * (-1) ** q * comb(k, 2 * q) for q in range(k // 2 + 1)},
    )


@lru_cache(maxsize=None)
def _fu_f_checked(k: int) -> GradedPoly:
    rec = _f_recurrence(k)
    if rec != f_closed_st(k):
        raise AssertionError(f"f_{k}: recurrence disagrees with (s,t) closed form")
    if convert(rec, Coords.TU) != f_closed_tu(k):
        raise AssertionError(f"f_{k}: recurrence disagrees with (t,u) closed form")
    return _assert_homogeneous(rec, k, f"f_{k}")


def fu_f(k: int, coords: Coords | str = Coords.ST) -> GradedPoly:
    """Fu polynomial ``f_k``: coefficient of ``x^k`` in ``log(1 + t x + s x^2)``."""
    if k < 1:
        raise ValueError("fu_f requires k >= 1")
    return convert(_fu_f_checked(k), coords)


@lru_cache(maxsize=None)
def _p_recurrence(k: int) -> GradedPoly:
    if k < 0:
        return GradedPoly.zero()
    if k == 0:
        return GradedPoly.constant(1)
    return -(t_var() * _p_recurrence(k - 1)) - s_var() * _p_recurrence(k - 2)


def p_closed_st(k: int) -> GradedPoly:
    return GradedPoly(
        Coords.ST,
        {(q, k - 2 * q): (-1) ** (k + q) * comb(k - q, q) for q in range(k // 2 + 1)},
    )


def p_closed_tu(k: int) -> GradedPoly:
    return GradedPoly(
        Coords.TU,
        {
            (q, k - 2 * q): Fraction((-1) ** (k + q) * comb(k + 1, 2 * q + 1), 2**k)
            for q in range(k // 2 + 1)
        },
    )


@lru_cache(maxsize=None)
def _poly_p_checked(k: int) -> GradedPoly:
    rec = _p_recurrence(k)
    if rec != p_closed_st(k):
        raise AssertionError(f"p_{k}: recurrence disagrees with (s,t) closed form")
    tu = convert(rec, Coords.TU)
    if tu != p_closed_tu(k):
        raise AssertionError(f"p_{k}: recurrence disagrees with (t,u) closed form")
    if tu != apply_diff("d_u", convert(_f_recurrence(k + 2), Coords.TU)) * 4:
        raise AssertionError(f"p_{k} != 4 d/du f_{k + 2}")
    return _assert_homogeneous(rec, k, f"p_{k}")


def poly_p(k: int, coords: Coords | str = Coords.ST) -> GradedPoly:
    """``p_k``: coefficient of ``x^k`` in ``1/(1 + t x + s x^2)``."""
    if k < 0:
        raise ValueError("poly_p requires k >= 0")
    return convert(_poly_p_checked(k), coords)


def q_closed_st(k: int) -> GradedPoly:
    return GradedPoly(
        Coords.ST,
        {
            (q, k - 2 * q): (-1) ** (k + 1 + q) * (q + 1) * comb(k + 1 - q, q + 1)
            for q in range(k // 2 + 1)
        },
    )


def q_closed_tu(k: int) -> GradedPoly:
    return GradedPoly(
        Coords.TU,
        {
            (q, k - 2 * q): Fraction((-1) ** (k + 1 + q) * (q + 1) * comb(k + 3, 2 * q + 3), 2**k)
            for q in range(k // 2 + 1)
        },
    )


@lru_cache(maxsize=None)
def _poly_q_checked(k: int) -> GradedPoly:
    conv = GradedPoly.zero()
    for i in range(k + 1):
        conv = conv + _p_recurrence(i) * _p_recurrence(k - i)
    conv = -conv
    if conv != q_closed_st(k):
        raise AssertionError(f"q_{k}: convolution disagrees with (s,t) closed form")
    tu = convert(conv, Coords.TU)
    if tu != q_closed_tu(k):
        raise AssertionError(f"q_{k}: convolution disagrees with (t,u) closed form")
    if tu != apply_diff("d_u", convert(_p_recurrence(k + 2), Coords.TU)) * 4:
        raise AssertionError(f"q_{k} != 4 d/du p_{k + 2}")
    return _assert_homogeneous(conv, k, f"q_{k}")


def poly_q(k: int, coords: Coords | str = Coords.ST) -> GradedPoly:
    """``q_k``: coefficient of ``x^k`` in ``-1/(1 + t x + s x^2)^2``."""
    if k < 0:
        raise ValueError("poly_q requires k >= 0")
    return convert(_poly_q_checked(k), coords)


def binomial_identity(n: int) -> tuple[int, int]:
    """Return ``(sum_i (-1)^i C(n-i, i) C(2n-2i, n-i), 2^n)``."""
    total = sum((-1) ** i * comb(n - i, i) * comb(2 * n - 2 * i, n - i) for i in range(n // 2 + 1))
    return total, 2**n


def monomials(d: int, coords: Coords | str = Coords.ST) -> list[GradedPoly]:
    """Monomials of degree ``d`` ordered by increasing power of s (or u)."""
    return [GradedPoly(coords, {(a, d - 2 * a): ONE}) for a in range(d // 2 + 1)]


def poly_sum(polys: Iterable[GradedPoly], coords: Coords | str = Coords.ST) -> GradedPoly:
    out = GradedPoly.zero(coords)
    for p in polys:
        out = out + p
    return out
