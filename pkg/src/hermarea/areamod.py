"""The module of unitarily invariant area measures over Val^{U(n)}.

Basis: ``B[k,q]`` and ``Gamma[k,q]`` (area measures of degree ``k``), with
the derived angular/null pairs ``Delta[k,q]``, ``N[k,q]``.  The action of
``t_hat`` and ``s_hat`` is tabulated from closed formulas; a general
valuation ``phi`` acts through the polynomial ``to_poly(F phi)`` evaluated
on these two operators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .linalg import LinearSystem, rank, same_span
from .poly import Coords, GradedPoly, apply_diff, convert, poly_p, poly_q
from .scalars import PiScalar, ScalarLike, ZERO, omega
from .tables import area_sort_key, table_from_json, table_to_json
from .valalg import (
    Valuation,
    algebra,
    dim_val,
    mu_degree_basis,
)
from .vectors import SparseVector, apply_table, format_terms

__all__ = [
    "AreaIndex",
    "AreaMeasure",
    "DeltaExpansion",
    "AreaModule",
    "area_module",
    "is_valid_area",
    "area_basis",
    "area_degree_basis",
    "dim_area",
    "B",
    "Gamma",
    "delta_measure",
    "null_measure",
    "hat_t_act",
    "hat_s_act",
    "act",
    "act_poly",
    "glob",
    "delta_map",
    "frak_b",
    "frak_g",
    "to_delta_basis",
    "from_delta_basis",
    "in_centroid_kernel",
    "angular_basis",
    "is_angular",
    "classical_delta",
    "a_operator",
    "angularity_condition",
    "presentation_check",
    "decomposition_report",
    "gamma_span_matches",
    "CACHE_ENV",
]

CACHE_ENV = "HERMAREA_CACHE_DIR"

AreaIndex = tuple[str, int, int]
KINDS = ("B", "Gamma")


def is_valid_area(n: int, kind: str, k: int, q: int) -> bool:
    if not 0 <= k <= 2 * n - 1:
        return False
    if kind == "B":
        # exponents n-k+q, k-2q-1, q of theta_0, theta_1, theta_2
        return max(0, k - n) <= q and 2 * q <= k - 1
    if kind == "Gamma":
        # exponents n-k+q-1, k-2q, q
        return max(0, k - n + 1) <= q <= k // 2
    raise ValueError(f"unknown area kind {kind!r}")


def area_degree_basis(n: int, k: int) -> list[AreaIndex]:
    out = [("B", k, q) for q in range(0, k + 1) if is_valid_area(n, "B", k, q)]
    out += [("Gamma", k, q) for q in range(0, k + 1) if is_valid_area(n, "Gamma", k, q)]
    return sorted(out, key=area_sort_key)


def area_basis(n: int) -> list[AreaIndex]:
    return [idx for k in range(2 * n) for idx in area_degree_basis(n, k)]


def dim_area(n: int, k: int) -> int:
    """Number of basis measures of degree ``k``; checked against the dimension formula."""
    if not 0 <= k <= 2 * n - 1:
        raise ValueError(f"degree {k} out of range 0..{2 * n - 1}")
    count = len(area_degree_basis(n, k))
    expected = dim_val(n, k) + dim_val(n, k + 1) - 1
    if count != expected:  # pragma: no cover - would be an index-convention bug
        raise AssertionError(f"dim Area_{k} for n={n}: {count} indices vs formula {expected}")
    return count


class AreaMeasure(SparseVector):
    """Element of Area^{U(n)} in the B/Gamma basis."""

    __slots__ = ()

    def _validate(self, key) -> None:
        kind, k, q = key
        if not is_valid_area(self.n, kind, k, q):
            if kind == "B":
                rule = "max(0, k-n) <= q <= (k-1)/2"
            else:
                rule = "max(0, k-n+1) <= q <= k/2"
            raise ValueError(f"{kind}[{k},{q}] is not a valid index for n={self.n}: need {rule}, 0 <= k <= 2n-1")

    sort_key = staticmethod(area_sort_key)

    def degree_part(self, k: int) -> "AreaMeasure":
        return self.filter(lambda key: key[1] == k)

    def degrees(self) -> set[int]:
        return {k for _, k, _ in self._coeffs}

    def __str__(self) -> str:
        return format_terms((f"{kind}[{k},{q}]", c) for (kind, k, q), c in self.items())

    def __repr__(self) -> str:
        return f"AreaMeasure(n={self.n}, {self})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": {f"{kind}_{k}_{q}": c.to_json() for (kind, k, q), c in self.items()},
        }


class DeltaExpansion(SparseVector):
    """Coordinates of an area measure in the Delta/N basis."""

    __slots__ = ()

    @staticmethod
    def sort_key(key):
        kind, k, q = key
        return (k, 0 if kind == "Delta" else 1, q)

    def __str__(self) -> str:
        return format_terms((f"{kind}[{k},{q}]", c) for (kind, k, q), c in self.items())

    def __repr__(self) -> str:
        return f"DeltaExpansion(n={self.n}, {self})"


def B(n: int, k: int, q: int, c: ScalarLike = 1) -> AreaMeasure:
    return AreaMeasure(n, {("B", k, q): c})


def Gamma(n: int, k: int, q: int, c: ScalarLike = 1) -> AreaMeasure:
    return AreaMeasure(n, {("Gamma", k, q): c})


def _delta_weights(n: int, k: int, q: int) -> tuple[Fraction, Fraction]:
    return Fraction(k - 2 * q, 2 * n - k), Fraction(2 * (n - k + q), 2 * n - k)


def delta_measure(n: int, k: int, q: int) -> AreaMeasure:
    """``Delta[k,q] = (k-2q)/(2n-k) B[k,q] + 2(n-k+q)/(2n-k) Gamma[k,q]``."""
    if not (max(0, k - n) <= q <= k / 2 and k < 2 * n):
        raise ValueError(f"Delta[{k},{q}] undefined for n={n}")
    a, b = _delta_weights(n, k, q)
    terms = {}
    if a:
        terms[("B", k, q)] = a
    if b:
        terms[("Gamma", k, q)] = b
    return AreaMeasure(n, terms)


def null_measure(n: int, k: int, q: int) -> AreaMeasure:
    """``N[k,q] = Delta[k,q] - B[k,q]``, defined for ``k > 2q`` and ``q > k-n``."""
    if not (k > 2 * q and q > k - n and q >= 0 and k < 2 * n):
        raise ValueError(f"N[{k},{q}] undefined for n={n}")
    return delta_measure(n, k, q) - B(n, k, q)


class AreaModule:
    """Structure tables for Area^{U(n)}; build once per ``n`` via :func:`area_module`."""

    def __init__(self, n: int, cache_dir: str | os.PathLike | None = None):
        self.n = n
        self.alg = algebra(n)
        self.basis = area_basis(n)
        loaded = self._load_cache(cache_dir)
        if loaded is None:
            self.hat_t_table = {idx: self._hat_t_formula(*idx) for idx in self.basis}
            self.hat_s_table = {idx: self._hat_s_formula(*idx) for idx in self.basis}
            self._save_cache(cache_dir)
        else:
            self.hat_t_table, self.hat_s_table = loaded
        self._delta_images: dict[int, LinearSystem] = {}

    # -- structure constants --------------------------------------------
    def _vec(self, terms: dict) -> AreaMeasure:
        return AreaMeasure(self.n, {k: v for k, v in terms.items() if is_valid_area(self.n, *k)})

    def _hat_t_formula(self, kind: str, k: int, q: int) -> AreaMeasure:
        n = self.n
        if k == 0:
            return AreaMeasure(n)
        ratio = omega(2 * n - k + 1).div_monomial(omega(2 * n - k)).shift(-1)
        if kind == "Gamma":
            terms = {
                ("Gamma", k - 1, q - 1): ratio * (k - 2 * q + 1),
                ("Gamma", k - 1, q): ratio * (2 * (n - k + q + 1)),
            }
        else:
            j = k - 2 * q
            terms = {
                ("B", k - 1, q - 1): ratio * (j + 1),
                ("B", k - 1, q): ratio * Fraction(2 * (n - k + q + 1) * (j - 1), j),
                ("Gamma", k - 1, q): ratio * Fraction(2 * (n - k + q + 1), j),
            }
        return self._vec(terms)

    def _hat_s_formula(self, kind: str, k: int, q: int) -> AreaMeasure:
        n = self.n
        if k < 2:
            return AreaMeasure(n)
        a = PiScalar({-1: Fraction((k - 2 * q + 2) * (k - 2 * q + 1), 2 * (2 * n - k + 2))})
        b = PiScalar({-1: Fraction(2 * (n - k + q + 1) * (n - q + 1), 2 * n - k + 2)})
        return self._vec({(kind, k - 2, q - 2): a, (kind, k - 2, q - 1): b})

    def _cache_path(self, cache_dir) -> Path | None:
        cache_dir = cache_dir or os.environ.get(CACHE_ENV)
        if not cache_dir:
            return None
        return Path(cache_dir)

    def _load_cache(self, cache_dir):
        path = self._cache_path(cache_dir)
        if path is None:
            return None
        files = [path / f"t_hat_n{self.n}.json", path / f"s_hat_n{self.n}.json"]
        if not all(f.exists() for f in files):
            return None
        out = []
        for f in files:
            n, _, raw = table_from_json(f.read_text())
            if n != self.n:
                return None
            out.append({idx: AreaMeasure(self.n, raw.get(idx, {})) for idx in self.basis})
        return tuple(out)

    def _save_cache(self, cache_dir) -> None:
        path = self._cache_path(cache_dir)
        if path is None:
            return
        path.mkdir(parents=True, exist_ok=True)
        for name, table in (("t_hat", self.hat_t_table), ("s_hat", self.hat_s_table)):
            tmp = path / f".{name}_n{self.n}.{os.getpid()}.tmp"
            tmp.write_text(table_to_json(self.n, name, self.raw_table(table)))
            tmp.replace(path / f"{name}_n{self.n}.json")

    @staticmethod
    def raw_table(table) -> dict:
        return {src: img.coeffs for src, img in table.items()}

    # -- module action ----------------------------------------------------
    def _check(self, m: AreaMeasure) -> AreaMeasure:
        if not isinstance(m, AreaMeasure):
            raise TypeError(f"expected AreaMeasure, got {type(m).__name__}")
        if m.n != self.n:
            raise ValueError(f"measure lives on n={m.n}, module on n={self.n}")
        return m

    def hat_t(self, m: AreaMeasure) -> AreaMeasure:
        return apply_table(self.hat_t_table, self._check(m))

    def hat_s(self, m: AreaMeasure) -> AreaMeasure:
        return apply_table(self.hat_s_table, self._check(m))

    def act_poly(self, p: GradedPoly, m: AreaMeasure) -> AreaMeasure:
        """``p(s_hat, t_hat) * m`` evaluated directly on the generators."""
        return self.alg.apply_poly(p, self._check(m), self.hat_s, self.hat_t)

    def act(self, phi: Valuation, m: AreaMeasure) -> AreaMeasure:
        """Convolution action ``phi * m``."""
        sigma = self.alg.to_poly(self.alg.fourier(phi))
        return self.act_poly(sigma, m)

    def glob(self, m: AreaMeasure) -> Valuation:
        self._check(m)
        out: dict = {}
        for (_, k, q), c in m.coeffs.items():
            out[(k, q)] = out.get((k, q), ZERO) + c
        return Valuation(self.n, out)

    def sphere_measure(self) -> AreaMeasure:
        """``S_{2n-1} = 2 B[2n-1, n-1]``."""
        return B(self.n, 2 * self.n - 1, self.n - 1, 2)

    def delta_map(self, phi: Valuation) -> AreaMeasure:
        return self.act(phi, self.sphere_measure())

    def _as_poly(self, phi) -> GradedPoly:
        if isinstance(phi, GradedPoly):
            return phi
        return self.alg.to_poly(phi)

    def frak_b(self, phi) -> AreaMeasure:
        """``F(phi) * B[2n-1, n-1]``; accepts a valuation or a polynomial."""
        return self.act_poly(self._as_poly(phi), B(self.n, 2 * self.n - 1, self.n - 1))

    def frak_g(self, phi) -> AreaMeasure:
        """``F(phi) * Gamma[2n-2, n-1]``; accepts a valuation or a polynomial."""
        return self.act_poly(self._as_poly(phi), Gamma(self.n, 2 * self.n - 2, self.n - 1))

    # -- Delta / N basis -----------------------------------------------
    def to_delta_basis(self, m: AreaMeasure) -> DeltaExpansion:
        n = self.n
        self._check(m)
        out: dict = {}
        for k in range(2 * n):
            for (_, q) in mu_degree_basis(n, k):
                x = m.coefficient(("B", k, q))
                y = m.coefficient(("Gamma", k, q))
                if not (x or y):
                    continue
                has_b = is_valid_area(n, "B", k, q)
                has_g = is_valid_area(n, "Gamma", k, q)
                if has_b and has_g:
                    _, b = _delta_weights(n, k, q)
                    out[("Delta", k, q)] = x + y
                    out[("N", k, q)] = y * (1 / b - 1) - x
                else:
                    out[("Delta", k, q)] = x if has_b else y
        return DeltaExpansion(n, out)

    def from_delta_basis(self, e: DeltaExpansion) -> AreaMeasure:
        out = AreaMeasure(self.n)
        for (kind, k, q), c in e.coeffs.items():
            base = delta_measure(self.n, k, q) if kind == "Delta" else null_measure(self.n, k, q)
            out = out + base.scale(c)
        return out

    def angular_basis(self) -> list[AreaMeasure]:
        return [delta_measure(self.n, k, q) for k in range(2 * self.n) for _, q in mu_degree_basis(self.n, k)]

    def is_angular(self, m: AreaMeasure) -> bool:
        return not any(c for (kind, _, _), c in self.to_delta_basis(m).coeffs.items() if kind == "N")

    # -- first variation / centroid kernel --------------------------------
    def delta_image_system(self, k: int) -> LinearSystem:
        """Columns ``delta(mu[k+1, q])`` in the degree-``k`` area basis."""
        if k not in self._delta_images:
            rows = area_degree_basis(self.n, k)
            cols = [
                self.delta_map(Valuation(self.n, {idx: 1})).to_column(rows)
                for idx in mu_degree_basis(self.n, k + 1)
            ]
            self._delta_images[k] = LinearSystem(cols, len(rows))
        return self._delta_images[k]

    def in_centroid_kernel(self, m: AreaMeasure) -> bool:
        self._check(m)
        for k in m.degrees():
            rows = area_degree_basis(self.n, k)
            if not self.delta_image_system(k).contains(m.degree_part(k).to_column(rows)):
                return False
        return True

    def classical_delta(self, k: int) -> AreaMeasure:
        """Spanning element of (angular) ∩ image(delta) in degree ``k``.

        Normalized so the Delta coefficient with the largest ``q`` is 1.
        """
        n = self.n
        if not 0 <= k <= 2 * n - 1:
            raise ValueError(f"degree {k} out of range 0..{2 * n - 1}")
        rows = area_degree_basis(n, k)
        deltas = [(q, delta_measure(n, k, q)) for _, q in mu_degree_basis(n, k)]
        images = [self.delta_map(Valuation(n, {idx: 1})) for idx in mu_degree_basis(n, k + 1)]
        cols = [d.to_column(rows) for _, d in deltas] + [(-img).to_column(rows) for img in images]
        null = LinearSystem(cols, len(rows)).nullspace()
        if len(null) != 1:
            raise AssertionError(f"angular ∩ image(delta) has dimension {len(null)} in degree {k}")
        x = null[0]
        result = AreaMeasure(n)
        for (q, d), c in zip(deltas, x):
            result = result + d.scale(c)
        lead_q = max(q for (q, _), c in zip(deltas, x) if c)
        lead = x[[q for q, _ in deltas].index(lead_q)]
        if not lead.is_monomial():  # pragma: no cover
            raise ArithmeticError("leading coefficient is not a pi-monomial")
        return result.scale(PiScalar({0: 1}).div_monomial(lead))

    # -- angularity ------------------------------------------------------
    def a_operator(self, p: GradedPoly, q: GradedPoly) -> AreaMeasure:
        """``b([t d_t + 1] p) + g(2 t d_u [t d_t + 2 u d_u + 2] p + q)``."""
        p = convert(p, Coords.TU)
        q = convert(q, Coords.TU)
        if any(b for (_, b) in q.terms):
            raise ValueError("the second argument of A must be a polynomial in u alone")
        first = apply_diff("t_d_t", p) + p
        inner = apply_diff("t_d_t", p) + apply_diff("u_d_u", p) * 2 + p * 2
        second = GradedPoly(Coords.TU, {(0, 1): 2}) * apply_diff("d_u", inner) + q
        return self.frak_b(convert(first, Coords.ST)) + self.frak_g(convert(second, Coords.ST))


@lru_cache(maxsize=None)
def area_module(n: int) -> AreaModule:
    return AreaModule(n)


def _mod(n: int, m=None) -> AreaModule:
    if m is not None and getattr(m, "n", n) != n:
        raise ValueError(f"argument lives on n={m.n}, expected n={n}")
    return area_module(n)


def hat_t_act(n: int, m: AreaMeasure) -> AreaMeasure:
    return _mod(n, m).hat_t(m)


def hat_s_act(n: int, m: AreaMeasure) -> AreaMeasure:
    return _mod(n, m).hat_s(m)


def act(n: int, phi: Valuation, m: AreaMeasure) -> AreaMeasure:
    _mod(n, phi)
    return _mod(n, m).act(phi, m)


def act_poly(n: int, p: GradedPoly, m: AreaMeasure) -> AreaMeasure:
    return _mod(n, m).act_poly(p, m)


def glob(n: int, m: AreaMeasure) -> Valuation:
    return _mod(n, m).glob(m)


def delta_map(n: int, phi: Valuation) -> AreaMeasure:
    return _mod(n, phi).delta_map(phi)


def frak_b(n: int, phi) -> AreaMeasure:
    return _mod(n, phi).frak_b(phi)


def frak_g(n: int, phi) -> AreaMeasure:
    return _mod(n, phi).frak_g(phi)


def to_delta_basis(n: int, m: AreaMeasure) -> DeltaExpansion:
    return _mod(n, m).to_delta_basis(m)


def from_delta_basis(n: int, e: DeltaExpansion) -> AreaMeasure:
    return _mod(n, e).from_delta_basis(e)


def in_centroid_kernel(n: int, m: AreaMeasure) -> bool:
    return _mod(n, m).in_centroid_kernel(m)


def angular_basis(n: int) -> list[AreaMeasure]:
    return area_module(n).angular_basis()


def is_angular(n: int, m: AreaMeasure) -> bool:
    return _mod(n, m).is_angular(m)


def classical_delta(n: int, k: int) -> AreaMeasure:
    return area_module(n).classical_delta(k)


def a_operator(n: int, p: GradedPoly, q: GradedPoly) -> AreaMeasure:
    return area_module(n).a_operator(p, q)


def angularity_condition(p: GradedPoly, q: GradedPoly) -> bool:
    """``d_u [t d_t + 2 u d_u + 2] p == (1/2) d_t q`` as (t, u) polynomials."""
    p = convert(p, Coords.TU)
    q = convert(q, Coords.TU)
    inner = apply_diff("t_d_t", p) + apply_diff("u_d_u", p) * 2 + p * 2
    return apply_diff("d_u", inner) == apply_diff("d_t", q) * Fraction(1, 2)


# -- presentation (Val + Val) / I_n ----------------------------------------


@dataclass
class DegreeReport:
    degree: int
    kernel_dim: int
    ideal_dim: int
    joint_rank: int

    @property
    def ok(self) -> bool:
        return self.kernel_dim == self.ideal_dim == self.joint_rank


@dataclass
class PresentationReport:
    n: int
    degrees: list[DegreeReport] = field(default_factory=list)
    generators_in_kernel: bool = False

    @property
    def ok(self) -> bool:
        return self.generators_in_kernel and all(d.ok for d in self.degrees)

    @property
    def failures(self) -> list[int]:
        return [d.degree for d in self.degrees if not d.ok]


def _pair_column(n, p: Valuation, q: Valuation, k: int) -> list[PiScalar]:
    rows_p = mu_degree_basis(n, k)
    rows_q = mu_degree_basis(n, k - 1)
    return p.to_column(rows_p) + q.to_column(rows_q)


def presentation_check(n: int) -> PresentationReport:
    """Compare ``ker h`` with the degree slices of ``I_n``.

    ``h(p, q) = b(p) + g(q)`` maps ``Val_k + Val_{k-1}`` to
    ``Area_{2n-k-1}``; ``I_n`` is generated by ``(p_n, -q_{n-1})`` and
    ``(0, p_n)`` under the diagonal product action.
    """
    mod = area_module(n)
    alg = mod.alg
    report = PresentationReport(n)
    pn = alg.from_poly(poly_p(n))
    qn1 = alg.from_poly(poly_q(n - 1))
    report.generators_in_kernel = (mod.frak_b(pn) + mod.frak_g(-qn1)).is_zero() and mod.frak_g(pn).is_zero()
    for k in range(0, 2 * n + 2):
        rows_p = mu_degree_basis(n, k)
        rows_q = mu_degree_basis(n, k - 1)
        nrows = len(rows_p) + len(rows_q)
        if nrows == 0:
            continue
        target = area_degree_basis(n, 2 * n - k - 1) if 0 <= 2 * n - k - 1 else []
        h_cols = []
        for idx in rows_p:
            h_cols.append(mod.frak_b(Valuation(n, {idx: 1})).to_column(target))
        for idx in rows_q:
            h_cols.append(mod.frak_g(Valuation(n, {idx: 1})).to_column(target))
        if target:
            kernel = LinearSystem(h_cols, len(target)).nullspace()
        else:
            kernel = [[PiScalar({0: int(i == j)}) for i in range(nrows)] for j in range(nrows)]
        ideal = []
        for idx in mu_degree_basis(n, k - n):
            phi = Valuation(n, {idx: 1})
            ideal.append(_pair_column(n, alg.product(phi, pn), alg.product(phi, -qn1), k))
        for idx in mu_degree_basis(n, k - n - 1):
            phi = Valuation(n, {idx: 1})
            ideal.append(_pair_column(n, Valuation(n), alg.product(phi, pn), k))
        ideal = [c for c in ideal if any(c)]
        kd = rank(kernel, nrows) if kernel else 0
        idd = rank(ideal, nrows) if ideal else 0
        joint = rank(kernel + ideal, nrows) if kernel or ideal else 0
        report.degrees.append(DegreeReport(k, kd, idd, joint))
    return report


@dataclass
class DecompositionRow:
    k: int
    dim_area: int
    dim_b: int
    dim_g: int
    dim_sum: int

    @property
    def intersection(self) -> int:
        return self.dim_b + self.dim_g - self.dim_sum


def decomposition_report(n: int) -> list[DecompositionRow]:
    """Ranks of ``b_k``, ``g_{k-1}`` and their sum inside ``Area_{2n-k-1}``."""
    mod = area_module(n)
    rows_out = []
    for k in range(1, 2 * n):
        target = area_degree_basis(n, 2 * n - k - 1)
        nrows = len(target)
        bcols = [mod.frak_b(Valuation(n, {idx: 1})).to_column(target) for idx in mu_degree_basis(n, k)]
        gcols = [mod.frak_g(Valuation(n, {idx: 1})).to_column(target) for idx in mu_degree_basis(n, k - 1)]
        rows_out.append(
            DecompositionRow(k, nrows, rank(bcols, nrows), rank(gcols, nrows), rank(bcols + gcols, nrows))
        )
    return rows_out


def gamma_span_matches(n: int) -> bool:
    """``image(g)`` equals ``span{Gamma}`` degree by degree."""
    mod = area_module(n)
    for d in range(2 * n):
        target = area_degree_basis(n, d)
        gammas = [[PiScalar({0: int(r == idx)}) for r in target] for idx in target if idx[0] == "Gamma"]
        k = 2 * n - 2 - d
        gcols = [mod.frak_g(Valuation(n, {idx: 1})).to_column(target) for idx in mu_degree_basis(n, k)]
        gcols = [c for c in gcols if any(c)]
        if not gammas and not gcols:
            continue
        if not gammas or not gcols or not same_span(gammas, gcols, len(target)):
            return False
    return True
