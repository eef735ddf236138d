"""Invariant differential forms on the sphere bundle, as a free algebra.

The algebra is free graded-commutative on the odd 1-forms alpha, beta, gamma
and the even 2-forms theta_0, theta_1, theta_2, theta_s.  Two operators act
on it:

* ``lie_T``: Lie derivative along the Reeb field, an even derivation with
  ``beta -> gamma``, ``theta_1 -> 2 theta_0``, ``theta_2 -> theta_1`` and
  every other generator killed;
* ``contract_R``: contraction with the radial field at ``r = 1``, an odd
  antiderivation with ``theta_0 -> gamma``, ``theta_1 -> beta`` and
  ``beta, gamma, theta_2 -> 0``.  It is left undefined on alpha and
  theta_s.

From these the convolution by ``t_hat = (2/pi) mu_{2n-1}`` on the basis
area measures is re-derived as ``(1/pi) L_T`` and compared with the closed
formulas in :mod:`hermarea.areamod`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from .areamod import AreaMeasure, area_basis, area_degree_basis, is_valid_area
from .scalars import PiScalar, ScalarLike, ZERO, as_scalar, omega

__all__ = [
    "GENERATORS",
    "InvariantForm",
    "gen",
    "wedge",
    "lie_T",
    "contract_R",
    "c_const",
    "beta_form",
    "gamma_form",
    "derive_t_hat_table",
    "delta_contraction",
]

GENERATORS = ("alpha", "beta", "gamma", "theta0", "theta1", "theta2", "theta_s")
ODD = 3  # alpha, beta, gamma occupy slots 0..2
DEGREE = (1, 1, 1, 2, 2, 2, 2)

Monomial = tuple[int, int, int, int, int, int, int]


def _factors(mono: Monomial) -> list[int]:
    out: list[int] = []
    for g, e in enumerate(mono):
        out.extend([g] * e)
    return out


def _mono_product(m1: Monomial, m2: Monomial) -> tuple[int, Monomial | None]:
    """Sign and canonical monomial of ``m1 ^ m2``; ``(0, None)`` if it vanishes."""
    sign = 1
    for y in range(ODD):
        if not m2[y]:
            continue
        if m1[y]:
            return 0, None
        # move y left past the odd generators of m1 that come after it
        for x in range(y + 1, ODD):
            if m1[x]:
                sign = -sign
    return sign, tuple(a + b for a, b in zip(m1, m2))  # type: ignore[return-value]


class InvariantForm:
    """Immutable element of the free graded-commutative algebra."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, ScalarLike] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != len(GENERATORS) or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono}")
            if any(mono[i] > 1 for i in range(ODD)):
                continue
            c = as_scalar(c)
            if c:
                clean[mono] = c
        self._terms: dict[Monomial, PiScalar] = clean

    @property
    def terms(self) -> dict[Monomial, PiScalar]:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> PiScalar:
        return self._terms.get(tuple(mono), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {sum(e * d for e, d in zip(m, DEGREE)) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def parity(self) -> int:
        pars = {d % 2 for d in self.degrees()}
        if len(pars) > 1:
            raise ValueError("form has mixed parity")
        return pars.pop() if pars else 0

    def __add__(self, other: "InvariantForm") -> "InvariantForm":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, ZERO) + c
        return InvariantForm(out)

    def __neg__(self) -> "InvariantForm":
        return InvariantForm({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "InvariantForm") -> "InvariantForm":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "InvariantForm":
        c = as_scalar(c)
        return InvariantForm({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, InvariantForm):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __xor__(self, other: "InvariantForm") -> "InvariantForm":
        return wedge(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"InvariantForm({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in sorted(self._terms.items()):
            names = []
            for g, e in enumerate(mono):
                if e == 1:
                    names.append(GENERATORS[g])
                elif e > 1:
                    names.append(f"{GENERATORS[g]}^{e}")
            body = " ^ ".join(names) or "1"
            parts.append(f"({c}) {body}")
        return " + ".join(parts)


def gen(name: str) -> InvariantForm:
    mono = [0] * len(GENERATORS)
    mono[GENERATORS.index(name)] = 1
    return InvariantForm({tuple(mono): 1})


def monomial(**exps: int) -> InvariantForm:
    mono = [0] * len(GENERATORS)
    for name, e in exps.items():
        mono[GENERATORS.index(name)] = e
    return InvariantForm({tuple(mono): 1})


ONE_FORM = InvariantForm({(0,) * len(GENERATORS): 1})


def wedge(a: InvariantForm, b: InvariantForm) -> InvariantForm:
    out: dict[Monomial, PiScalar] = {}
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            sign, m = _mono_product(m1, m2)
            if not sign:
                continue
            out[m] = out.get(m, ZERO) + c1 * c2 * sign
    return InvariantForm(out)


def _apply_graded_derivation(
    f: InvariantForm, rule: Callable[[int], InvariantForm], odd: bool
) -> InvariantForm:
    """Extend ``rule`` on generators by the (anti)Leibniz rule."""
    out = InvariantForm()
    for mono, c in f._terms.items():
        factors = _factors(mono)
        for i, g in enumerate(factors):
            image = rule(g)
            if not image:
                continue
            before = sum(DEGREE[h] for h in factors[:i])
            sign = -1 if odd and before % 2 else 1
            left = ONE_FORM
            for h in factors[:i]:
                left = wedge(left, gen(GENERATORS[h]))
            right = ONE_FORM
            for h in factors[i + 1:]:
                right = wedge(right, gen(GENERATORS[h]))
            out = out + wedge(wedge(left, image), right).scale(c * sign)
    return out


_LIE_T = {
    "beta": lambda: gen("gamma"),
    "theta1": lambda: gen("theta0").scale(2),
    "theta2": lambda: gen("theta1"),
}


def lie_T(f: InvariantForm) -> InvariantForm:
    """Lie derivative along the Reeb field (even derivation)."""

    def rule(g: int) -> InvariantForm:
        fn = _LIE_T.get(GENERATORS[g])
        return fn() if fn else InvariantForm()

    return _apply_graded_derivation(f, rule, odd=False)


# i_R theta_1 = +beta/r: in coordinates i_R(dx ^ d eta - dy ^ d xi) = (xi dy - eta dx)/r
_CONTRACT_R = {
    "theta0": lambda: gen("gamma"),
    "theta1": lambda: gen("beta"),
}


def contract_R(f: InvariantForm) -> InvariantForm:
    """Contraction with the radial field at ``r = 1`` (odd antiderivation)."""
    for mono in f._terms:
        if mono[0] or mono[6]:
            raise ValueError("contract_R is not defined on forms containing alpha or theta_s")

    def rule(g: int) -> InvariantForm:
        fn = _CONTRACT_R.get(GENERATORS[g])
        return fn() if fn else InvariantForm()

    return _apply_graded_derivation(f, rule, odd=True)


def c_const(n: int, k: int, q: int) -> PiScalar:
    """``1 / (q! (n-k+q)! (k-2q)! omega_{2n-k})``."""
    denom = omega(2 * n - k) * (factorial(q) * factorial(n - k + q) * factorial(k - 2 * q))
    return PiScalar({0: 1}).div_monomial(denom)


def _beta_mono(n: int, k: int, q: int) -> Monomial:
    return (0, 1, 0, n - k + q, k - 2 * q - 1, q, 0)


def _gamma_mono(n: int, k: int, q: int) -> Monomial:
    return (0, 0, 1, n - k + q - 1, k - 2 * q, q, 0)


def beta_form(n: int, k: int, q: int) -> InvariantForm:
    """``c_{n,k,q} beta ^ theta0^(n-k+q) ^ theta1^(k-2q-1) ^ theta2^q``."""
    if not is_valid_area(n, "B", k, q):
        raise ValueError(f"beta_{k},{q} undefined for n={n}")
    return InvariantForm({_beta_mono(n, k, q): c_const(n, k, q)})


def gamma_form(n: int, k: int, q: int) -> InvariantForm:
    """``(c_{n,k,q}/2) gamma ^ theta0^(n-k+q-1) ^ theta1^(k-2q) ^ theta2^q``."""
    if not is_valid_area(n, "Gamma", k, q):
        raise ValueError(f"gamma_{k},{q} undefined for n={n}")
    return InvariantForm({_gamma_mono(n, k, q): c_const(n, k, q) * Fraction(1, 2)})


def area_form(n: int, idx) -> InvariantForm:
    kind, k, q = idx
    return beta_form(n, k, q) if kind == "B" else gamma_form(n, k, q)


def expand_in_basis(n: int, f: InvariantForm, k: int) -> AreaMeasure:
    """Write ``f`` in the degree-``k`` beta/gamma forms; raises on a residual."""
    coeffs = {}
    residual = f
    for idx in area_degree_basis(n, k):
        form = area_form(n, idx)
        ((mono, c),) = form.terms.items()
        x = f.coefficient(mono)
        if x:
            coeffs[idx] = x.div_monomial(c)
            residual = residual - form.scale(coeffs[idx])
    if residual:
        raise ArithmeticError(f"nonzero residual {residual} expanding into degree {k}")
    return AreaMeasure(n, coeffs)


def derive_t_hat_table(n: int) -> dict:
    """``t_hat`` action on every basis measure, computed as ``(1/pi) L_T``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    inv_pi = PiScalar({-1: 1})
    table = {}
    for idx in area_basis(n):
        _, k, _ = idx
        image = lie_T(area_form(n, idx)).scale(inv_pi)
        table[idx] = expand_in_basis(n, image, k - 1) if k > 0 else AreaMeasure(n)
        if k == 0 and image:
            raise ArithmeticError(f"L_T of degree-0 form {idx} is nonzero")
    return table


def delta_contraction(n: int, k: int, q: int) -> InvariantForm:
    """``i_R`` of the form representing ``Delta[k,q]``."""
    a = Fraction(k - 2 * q, 2 * n - k)
    b = Fraction(2 * (n - k + q), 2 * n - k)
    form = InvariantForm()
    if a:
        form = form + beta_form(n, k, q).scale(a)
    if b:
        form = form + gamma_form(n, k, q).scale(b)
    return contract_R(form)
