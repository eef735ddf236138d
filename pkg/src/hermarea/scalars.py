"""Exact scalars: rational Laurent polynomials in a formal, transcendental pi.

Every coefficient that shows up in the unitary valuation algebra and its
area-measure module is of the form ``sum_j r_j * pi**j`` with rational
``r_j``.  Since pi is transcendental this ring is an integral domain and
equality can be decided term by term, so nothing is ever evaluated
numerically.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

__all__ = ["PiScalar", "ScalarLike", "as_scalar", "omega", "PI", "ZERO", "ONE"]

ScalarLike = Union["PiScalar", int, Fraction]


class PiScalar:
    """Immutable element of Q[pi, 1/pi].

    ``terms`` maps an integer pi-exponent to a nonzero :class:`Fraction`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Union[int, Fraction]] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for power, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[int(power)] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "PiScalar":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: Union[int, Fraction], power: int = 0) -> "PiScalar":
        return cls({power: coeff})

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def monomial_parts(self) -> tuple[Fraction, int]:
        """Return ``(coeff, power)`` of a single-term scalar."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a pi-monomial")
        ((power, coeff),) = self._terms.items()
        return coeff, power

    def to_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0]

    def coefficient(self, power: int) -> Fraction:
        return self._terms.get(power, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: ScalarLike) -> "PiScalar":
        other = as_scalar(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for power, coeff in other._terms.items():
            c = out.get(power, 0) + coeff
            if c:
                out[power] = c
            else:
                out.pop(power, None)
        return PiScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "PiScalar":
        return PiScalar._raw({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> "PiScalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other: ScalarLike) -> "PiScalar":
        return as_scalar(other) + (-self)

    def __mul__(self, other: ScalarLike) -> "PiScalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return PiScalar._raw({p: c * other for p, c in self._terms.items()})
        if not isinstance(other, PiScalar):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                out[p1 + p2] = out.get(p1 + p2, 0) + c1 * c2
        return PiScalar(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PiScalar":
        if exponent < 0:
            return ONE.div_monomial(self) ** (-exponent)
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def div_monomial(self, divisor: ScalarLike) -> "PiScalar":
        """Exact quotient by a single nonzero term ``r * pi**j``."""
        divisor = as_scalar(divisor)
        if len(divisor._terms) != 1:
            raise ZeroDivisionError(
                f"division only by a nonzero pi-monomial, got {divisor}"
            )
        coeff, power = divisor.monomial_parts()
        return PiScalar._raw({p - power: c / coeff for p, c in self._terms.items()})

    def __truediv__(self, other: ScalarLike) -> "PiScalar":
        return self.div_monomial(other)

    def __rtruediv__(self, other: ScalarLike) -> "PiScalar":
        return as_scalar(other).div_monomial(self)

    def shift(self, power: int) -> "PiScalar":
        """Multiply by ``pi**power``."""
        if not power:
            return self
        return PiScalar._raw({p + power: c for p, c in self._terms.items()})

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = as_scalar(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering ----------------------------------------------------
    def __repr__(self) -> str:
        return f"PiScalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)

    def to_json(self) -> list[dict[str, int]]:
        return [
            {"pi_power": p, "num": c.numerator, "den": c.denominator}
            for p, c in self.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, int]]) -> "PiScalar":
        out: dict[int, Fraction] = {}
        for term in data:
            p = int(term["pi_power"])
            out[p] = out.get(p, 0) + Fraction(int(term["num"]), int(term["den"]))
        return cls(out)


def as_scalar(x: ScalarLike) -> PiScalar:
    if isinstance(x, PiScalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return PiScalar({0: Fraction(x)})
    raise TypeError(f"cannot convert {type(x).__name__} to PiScalar")


def _format_term(coeff: Fraction, power: int) -> str:
    num = str(abs(coeff.numerator))
    text = num if coeff.denominator == 1 else f"{num}/{coeff.denominator}"
    if power:
        pi = f"pi^{power}" if power != 1 else "pi"
        text = pi if text == "1" else f"{text} * {pi}"
    return text


def format_scalar(x: PiScalar) -> str:
    """Render as ``num/den * pi^j`` terms, pi-powers ascending."""
    items = x.items()
    if not items:
        return "0"
    parts = []
    for i, (power, coeff) in enumerate(items):
        body = _format_term(coeff, power)
        if i == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts)


ZERO = PiScalar()
ONE = PiScalar({0: 1})
PI = PiScalar({1: 1})


def omega(m: int) -> PiScalar:
    """Volume of the m-dimensional euclidean unit ball, ``pi^(m/2)/Gamma(m/2+1)``.

    Even ``m = 2p`` gives ``pi^p/p!``; odd ``m = 2p+1`` gives
    ``2^(2p+1) p! pi^p / (2p+1)!``, so the square roots of pi cancel.
    """
    if m < 0:
        raise ValueError("omega requires m >= 0")
    p, odd = divmod(m, 2)
    if not odd:
        return PiScalar({p: Fraction(1, factorial(p))})
    return PiScalar({p: Fraction(2 ** (2 * p + 1) * factorial(p), factorial(2 * p + 1))})
