"""The algebra of unitarily invariant valuations on C^n.

Elements are stored in the hermitian intrinsic volume basis ``mu[k,q]``,
``max(0, k-n) <= q <= k//2``.  Multiplication by ``s`` and convolution by
``t_hat`` come from closed formulas; multiplication by ``t`` and convolution
by ``s_hat`` are their Fourier conjugates.  Everything else (general
products, the polynomial section, ball values) is built from these four
tables.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterator

from .linalg import LinearSystem
from .poly import Coords, GradedPoly, convert
from .scalars import PiScalar, ScalarLike, ZERO, omega
from .vectors import SparseVector, apply_table, format_terms

__all__ = [
    "MuIndex",
    "Valuation",
    "ValAlgebra",
    "algebra",
    "is_valid_mu",
    "mu_basis",
    "dim_val",
    "mu",
    "chi",
    "vol",
    "fourier",
    "mult_s",
    "mult_t",
    "hat_t_mult",
    "hat_s_mult",
    "from_poly",
    "to_poly",
    "product",
    "convolution",
    "eval_ball_top",
    "special",
]

MuIndex = tuple[int, int]


def is_valid_mu(n: int, k: int, q: int) -> bool:
    return 0 <= k <= 2 * n and max(0, k - n) <= q <= k // 2


def mu_degree_basis(n: int, k: int) -> list[MuIndex]:
    if not 0 <= k <= 2 * n:
        return []
    return [(k, q) for q in range(max(0, k - n), k // 2 + 1)]


def mu_basis(n: int) -> list[MuIndex]:
    return [idx for k in range(2 * n + 1) for idx in mu_degree_basis(n, k)]


def dim_val(n: int, k: int) -> int:
    """``1 + min(k//2, (2n-k)//2)`` for ``0 <= k <= 2n``."""
    if not 0 <= k <= 2 * n:
        raise ValueError(f"degree {k} out of range 0..{2 * n}")
    return 1 + min(k // 2, (2 * n - k) // 2)


class Valuation(SparseVector):
    """Element of Val^{U(n)}, coefficients over ``mu[k,q]``."""

    __slots__ = ()

    def _validate(self, key) -> None:
        k, q = key
        if not is_valid_mu(self.n, k, q):
            raise ValueError(
                f"mu[{k},{q}] is not a valid index for n={self.n}: need "
                f"max(0, k-n) <= q <= k/2 and 0 <= k <= 2n"
            )

    def degree_part(self, k: int) -> "Valuation":
        return self.filter(lambda key: key[0] == k)

    def degrees(self) -> set[int]:
        return {k for k, _ in self._coeffs}

    def __str__(self) -> str:
        return format_terms((f"mu[{k},{q}]", c) for (k, q), c in self.items())

    def __repr__(self) -> str:
        return f"Valuation(n={self.n}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": {f"mu_{k}_{q}": c.to_json() for (k, q), c in self.items()},
        }

    @classmethod
    def from_json(cls, data) -> "Valuation":
        coeffs = {}
        for key, c in data["coeffs"].items():
            _, k, q = key.split("_")
            coeffs[(int(k), int(q))] = PiScalar.from_json(c)
        return cls(int(data["n"]), coeffs)


def mu(n: int, k: int, q: int, c: ScalarLike = 1) -> Valuation:
    return Valuation(n, {(k, q): c})


def chi(n: int) -> Valuation:
    return mu(n, 0, 0)


def vol(n: int) -> Valuation:
    return mu(n, 2 * n, n)


def _fraction_pi(num: Fraction, pi_power: int) -> PiScalar:
    return PiScalar({pi_power: num})


class ValAlgebra:
    """Structure tables of Val^{U(n)}; build once per ``n`` via :func:`algebra`."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.basis = mu_basis(n)
        self.s_table = {idx: self._s_formula(*idx) for idx in self.basis}
        self.hat_t_table = {idx: self._hat_t_formula(*idx) for idx in self.basis}
        self.fourier_table = {idx: self._fourier_index(*idx) for idx in self.basis}
        self.t_table = {
            idx: self.fourier(self.hat_t(self.fourier(mu(n, *idx)))) for idx in self.basis
        }
        self.hat_s_table = {
            idx: self.fourier(self.mult_s(self.fourier(mu(n, *idx)))) for idx in self.basis
        }
        self._monomials: dict[tuple[int, int], Valuation] = {(0, 0): chi(n)}
        self._sections: dict[int, LinearSystem] = {}

    # -- basic tables --------------------------------------------------
    def _vec(self, terms: dict) -> Valuation:
        return Valuation(self.n, {k: v for k, v in terms.items() if is_valid_mu(self.n, *k)})

    def _s_formula(self, k: int, q: int) -> Valuation:
        # terms with an index outside the valid range are replaced by 0
        a = Fraction((k - 2 * q + 2) * (k - 2 * q + 1), 2 * (k + 2))
        b = Fraction(2 * (q + 1) * (k - q + 1), k + 2)
        terms = {}
        if a:
            terms[(k + 2, q)] = _fraction_pi(a, -1)
        if b:
            terms[(k + 2, q + 1)] = _fraction_pi(b, -1)
        return self._vec(terms)

    def _hat_t_formula(self, k: int, q: int) -> Valuation:
        n = self.n
        if k == 0:
            return Valuation(n)
        ratio = omega(2 * n - k + 1).div_monomial(omega(2 * n - k)).shift(-1)
        terms = {
            (k - 1, q - 1): ratio * (k - 2 * q + 1),
            (k - 1, q): ratio * (2 * (n - k + q + 1)),
        }
        return self._vec(terms)

    def _fourier_index(self, k: int, q: int) -> MuIndex:
        return (2 * self.n - k, self.n - k + q)

    # -- linear operators ---------------------------------------------
    def _check(self, v: Valuation) -> Valuation:
        if not isinstance(v, Valuation):
            raise TypeError(f"expected Valuation, got {type(v).__name__}")
        if v.n != self.n:
            raise ValueError(f"valuation lives on n={v.n}, algebra on n={self.n}")
        return v

    def fourier(self, v: Valuation) -> Valuation:
        return self._check(v).map_keys(self.fourier_table.__getitem__)

    def mult_s(self, v: Valuation) -> Valuation:
        return apply_table(self.s_table, self._check(v))

    def mult_t(self, v: Valuation) -> Valuation:
        return apply_table(self.t_table, self._check(v))

    def hat_t(self, v: Valuation) -> Valuation:
        return apply_table(self.hat_t_table, self._check(v))

    def hat_s(self, v: Valuation) -> Valuation:
        return apply_table(self.hat_s_table, self._check(v))

    # -- polynomial presentation ---------------------------------------
    def monomial(self, a: int, b: int) -> Valuation:
        """``s^a t^b`` as a valuation."""
        key = (a, b)
        if key not in self._monomials:
            if b > 0:
                self._monomials[key] = self.mult_t(self.monomial(a, b - 1))
            else:
                self._monomials[key] = self.mult_s(self.monomial(a - 1, 0))
        return self._monomials[key]

    def from_poly(self, p: GradedPoly) -> Valuation:
        out = Valuation(self.n)
        for (a, b), c in convert(p, Coords.ST).items():
            if 2 * a + b <= 2 * self.n:
                out = out + self.monomial(a, b).scale(c)
        return out

    def _section(self, d: int) -> LinearSystem:
        if d not in self._sections:
            rows = mu_degree_basis(self.n, d)
            cols = [self.monomial(a, d - 2 * a).to_column(rows) for a in range(d // 2 + 1)]
            self._sections[d] = LinearSystem(cols, len(rows))
        return self._sections[d]

    def to_poly(self, v: Valuation) -> GradedPoly:
        """Canonical preimage under :meth:`from_poly`.

        Per degree the monomials are ordered by increasing power of ``s``
        and the basic solution of the reduced system (free variables zero)
        is taken, so the earliest independent monomials are used.
        """
        self._check(v)
        terms: dict = {}
        for d in sorted(v.degrees()):
            rows = mu_degree_basis(self.n, d)
            x = self._section(d).solve(v.to_column(rows))
            if x is None:  # pragma: no cover - surjectivity
                raise ArithmeticError(f"degree {d} component not in the image of from_poly")
            for a, c in enumerate(x):
                if c:
                    terms[(a, d - 2 * a)] = c
        return GradedPoly(Coords.ST, terms)

    def apply_poly(
        self,
        p: GradedPoly,
        v,
        s_op: Callable | None = None,
        t_op: Callable | None = None,
    ):
        """Evaluate ``p(s_op, t_op)`` on ``v``; defaults to multiplication."""
        s_op = s_op or self.mult_s
        t_op = t_op or self.mult_t
        p = convert(p, Coords.ST)
        out = v.scale(0)
        t_powers = [v]
        for (a, b), c in p.items():
            if 2 * a + b > 2 * self.n:
                continue
            while len(t_powers) <= b:
                t_powers.append(t_op(t_powers[-1]))
            w = t_powers[b]
            for _ in range(a):
                w = s_op(w)
            out = out + w.scale(c)
        return out

    def product(self, a: Valuation, b: Valuation) -> Valuation:
        return self.apply_poly(self.to_poly(a), self._check(b))

    def convolution(self, a: Valuation, b: Valuation) -> Valuation:
        return self.fourier(self.product(self.fourier(a), self.fourier(b)))

    def eval_ball_top(self, v: Valuation) -> PiScalar:
        """Value on the unit ball of a top-degree valuation.

        Uses ``s^i t^(2n-2i)(B) = C(2n-2i, n-i)`` through :meth:`to_poly`.
        """
        self._check(v)
        if v.degrees() - {2 * self.n}:
            raise ValueError("eval_ball_top needs a valuation of degree 2n")
        n = self.n
        total = ZERO
        for (a, b), c in self.to_poly(v).items():
            total = total + c * comb(2 * n - 2 * a, n - a)
        return total

    # -- special elements ----------------------------------------------
    def special(self, name: str) -> Valuation:
        n = self.n
        table = {
            "chi": lambda: chi(n),
            "vol": lambda: vol(n),
            "t": lambda: self.monomial(0, 1),
            "s": lambda: self.monomial(1, 0),
            "u": lambda: self.monomial(1, 0).scale(4) - self.monomial(0, 2),
        }
        if name in table:
            return table[name]()
        if name.endswith("_hat") and name[:-4] in table:
            return self.fourier(table[name[:-4]]())
        raise KeyError(f"unknown special valuation {name!r}")


@lru_cache(maxsize=None)
def algebra(n: int) -> ValAlgebra:
    return ValAlgebra(n)


# -- module-level interface --------------------------------------------


def _alg(n: int, v: Valuation | None = None) -> ValAlgebra:
    if v is not None and v.n != n:
        raise ValueError(f"valuation lives on n={v.n}, expected n={n}")
    return algebra(n)


def fourier(n: int, v: Valuation) -> Valuation:
    return _alg(n, v).fourier(v)


def mult_s(n: int, v: Valuation) -> Valuation:
    return _alg(n, v).mult_s(v)


def mult_t(n: int, v: Valuation) -> Valuation:
    return _alg(n, v).mult_t(v)


def hat_t_mult(n: int, v: Valuation) -> Valuation:
    return _alg(n, v).hat_t(v)


def hat_s_mult(n: int, v: Valuation) -> Valuation:
    return _alg(n, v).hat_s(v)


def from_poly(n: int, p: GradedPoly) -> Valuation:
    return algebra(n).from_poly(p)


def to_poly(n: int, v: Valuation) -> GradedPoly:
    return _alg(n, v).to_poly(v)


def product(n: int, a: Valuation, b: Valuation) -> Valuation:
    _alg(n, a)
    return _alg(n, b).product(a, b)


def convolution(n: int, a: Valuation, b: Valuation) -> Valuation:
    _alg(n, a)
    return _alg(n, b).convolution(a, b)


def eval_ball_top(n: int, v: Valuation) -> PiScalar:
    return _alg(n, v).eval_ball_top(v)


def special(n: int, name: str) -> Valuation:
    return algebra(n).special(name)


def iter_degrees(n: int) -> Iterator[int]:
    return iter(range(2 * n + 1))
