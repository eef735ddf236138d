"""Named identity checks and the report produced by ``hermarea verify``.

Every check is a function ``n -> list[str]`` returning failure witnesses
(empty list means pass).  Checks are pure, so the order they run in does not
matter and the report is deterministic apart from timings.
"""

from __future__ import annotations

import fnmatch
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .areamod import (
    AreaMeasure,
    B,
    Gamma,
    area_basis,
    area_module,
    decomposition_report,
    delta_measure,
    dim_area,
    gamma_span_matches,
    is_valid_area,
    null_measure,
    presentation_check,
    angularity_condition,
)
from .forms import delta_contraction, derive_t_hat_table
from .linalg import LinearSystem, rank, same_span
from .poly import (
    Coords,
    GradedPoly,
    _f_recurrence,
    _p_recurrence,
    apply_diff,
    binomial_identity,
    convert,
    f_closed_st,
    f_closed_tu,
    fu_f,
    monomials,
    p_closed_st,
    p_closed_tu,
    poly_p,
    poly_q,
    q_closed_st,
    q_closed_tu,
)
from .scalars import PiScalar
from .tables import table_diff
from .valalg import Valuation, algebra, dim_val, mu_basis, mu_degree_basis

CheckFn = Callable[[int], list[str]]


@dataclass
class CheckResult:
    name: str
    n: int
    passed: bool
    witness: list[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class VerifyReport:
    n_max: int
    pattern: str | None
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def format(self, timings: bool = False) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            extra = f"  ({r.seconds:.3f}s)" if timings else ""
            lines.append(f"{status}  {r.name:<22} n={r.n}{extra}")
            for w in r.witness[:5]:
                lines.append(f"      {w}")
        passed = sum(r.passed for r in self.results)
        lines.append(f"{passed}/{len(self.results)} checks passed")
        return "\n".join(lines)


@dataclass(frozen=True)
class SuiteBounds:
    """Largest ``n`` (or index) each family of checks is run at."""

    poly_index: int = 12
    binomial: int = 20
    module: int = 5
    presentation: int = 4
    dimensions: int = 6
    angularity_n: int = 5
    angularity_degree: int = 4
    homomorphism: int = 4
    samples: int = 100
    seed: int = 0


def _tu(i: int, j: int = 0, c=1) -> GradedPoly:
    """``c * u^i t^j``."""
    return GradedPoly(Coords.TU, {(i, j): c})


def _pi(c, power: int) -> PiScalar:
    return PiScalar({power: Fraction(c)})


# -- 1, 2: polynomial identities -----------------------------------------------


def check_poly_identities(n: int) -> list[str]:
    """Relations between f, p, q at index ``n`` and closed-form agreement."""
    out = []
    t, u = GradedPoly(Coords.ST, {(0, 1): 1}), GradedPoly(Coords.ST, {(1, 0): 4, (0, 2): -1})
    k = n
    lhs = -(u * poly_q(k - 1)) + t * poly_p(k)
    if lhs != fu_f(k + 1) * ((k + 1) ** 2):
        out.append(f"-u q_{k-1} + t p_{k} != (k+1)^2 f_{k+1}")
    if u * poly_p(n) != fu_f(n + 2) * (2 * (n + 2)) + t * fu_f(n + 1) * (n + 1):
        out.append(f"u p_{n} != 2(n+2) f_{n+2} + (n+1) t f_{n+1}")
    for name, rec, st, tu in (
        ("f", _f_recurrence(n), f_closed_st(n), f_closed_tu(n)),
        ("p", _p_recurrence(n), p_closed_st(n), p_closed_tu(n)),
        ("q", poly_q(n), q_closed_st(n), q_closed_tu(n)),
    ):
        if rec != st or convert(rec, Coords.TU) != tu or convert(tu, Coords.ST) != st:
            out.append(f"{name}_{n}: recurrence and closed forms disagree")
    if convert(poly_p(n), Coords.TU) != apply_diff("d_u", fu_f(n + 2, Coords.TU)) * 4:
        out.append(f"p_{n} != 4 d/du f_{n+2}")
    return out


def check_binomial(n: int) -> list[str]:
    total, expected = binomial_identity(n)
    return [] if total == expected else [f"sum = {total}, expected {expected}"]


# -- 3, 4: Fu quotient and ball values -------------------------------------------


def check_fu_quotient(n: int) -> list[str]:
    alg = algebra(n)
    out = []
    for k in (n + 1, n + 2):
        if alg.from_poly(fu_f(k)):
            out.append(f"from_poly(f_{k}) = {alg.from_poly(fu_f(k))}")
    for d in range(0, 2 * n + 3):
        rows = mu_degree_basis(n, d)
        cols = [alg.from_poly(m).to_column(rows) for m in monomials(d)]
        r = rank(cols, len(rows)) if rows else 0
        expected = 1 + min(d // 2, (2 * n - d) // 2) if d <= 2 * n else 0
        if r != expected:
            out.append(f"degree {d}: quotient dimension {r}, expected {expected}")
    return out


def check_ball_eval(n: int) -> list[str]:
    alg = algebra(n)
    out = []
    for i in range(n + 1):
        v = alg.monomial(i, 2 * n - 2 * i)
        got = alg.eval_ball_top(v)
        if got != PiScalar({0: comb(2 * n - 2 * i, n - i)}):
            out.append(f"s^{i} t^{2*n-2*i}(ball) = {got}")
    got = alg.eval_ball_top(alg.from_poly(GradedPoly(Coords.ST, {(0, n): 1}) * poly_p(n)))
    if got != PiScalar({0: (-1) ** n * 2**n}):
        out.append(f"t^n p_n(ball) = {got}")
    if alg.from_poly(poly_p(n, Coords.TU) * _tu(1)):
        out.append("u p_n != 0")
    return out


# -- 5, 6, 7, 8, 9: module structure ---------------------------------------------


def check_fhat_annihilation(n: int) -> list[str]:
    mod = area_module(n)
    alg = mod.alg
    out = []
    for k in (n + 1, n + 2):
        fhat = alg.fourier(alg.from_poly(fu_f(k)))
        # act() would first reduce modulo the Fu ideal, so feed the raw polynomial
        raw = convert(fu_f(k), Coords.ST)
        for idx in area_basis(n):
            m = AreaMeasure(n, {idx: 1})
            if mod.act_poly(raw, m):
                out.append(f"f_{k}(s_hat, t_hat) {idx} = {mod.act_poly(raw, m)}")
            if mod.act(fhat, m):
                out.append(f"act(f_hat_{k}, {idx}) != 0")
    return out


def check_kernel_lemma(n: int) -> list[str]:
    mod = area_module(n)
    out = []
    g = mod.frak_g(poly_p(n))
    if g:
        out.append(f"g(p_{n}) = {g}")
    b, gq = mod.frak_b(poly_p(n)), mod.frak_g(poly_q(n - 1))
    if b != gq:
        out.append(f"b(p_{n}) = {b} but g(q_{n-1}) = {gq}")
    return out


def check_presentation(n: int) -> list[str]:
    report = presentation_check(n)
    out = []
    if not report.generators_in_kernel:
        out.append("generators not in ker h")
    for d in report.degrees:
        if not d.ok:
            out.append(f"degree {d.degree}: dim ker {d.kernel_dim}, dim I {d.ideal_dim}, joint {d.joint_rank}")
    return out


def check_dimensions(n: int) -> list[str]:
    out = []
    for k in range(2 * n):
        if dim_area(n, k) != dim_val(n, k) + dim_val(n, k + 1) - 1:
            out.append(f"dim Area_{k}")
    total = len(area_basis(n))
    if total != n * n + n:
        out.append(f"total {total} != n^2 + n")
    if total != sum(dim_area(n, k) for k in range(2 * n)):
        out.append("index count and per-degree formula disagree")
    return out


def check_decomposition(n: int) -> list[str]:
    out = []
    for row in decomposition_report(n):
        want = 0 if row.k < n else 1
        if row.dim_sum != row.dim_area or row.intersection != want:
            out.append(f"k={row.k}: sum {row.dim_sum}/{row.dim_area}, intersection {row.intersection}")
        kk = row.k - 1
        want_g = dim_val(n, kk) if kk < n else dim_val(n, kk) - 1
        if row.dim_g != want_g:
            out.append(f"dim g_{kk} = {row.dim_g}, expected {want_g}")
    if not gamma_span_matches(n):
        out.append("image(g) != span(Gamma)")
    return out


# -- 10: forms oracle ----------------------------------------------------------


def check_oracle_t_table(n: int) -> list[str]:
    derived = derive_t_hat_table(n)
    stored = area_module(n).hat_t_table
    raw = lambda tab: {k: dict(v.items()) for k, v in tab.items()}  # noqa: E731
    return table_diff(raw(derived), raw(stored))


def check_delta_contraction(n: int) -> list[str]:
    out = []
    for k in range(2 * n):
        for _, q in mu_degree_basis(n, k):
            r = delta_contraction(n, k, q)
            if r:
                out.append(f"i_R Delta[{k},{q}] = {r}")
    return out


# -- 11: centroid kernel -------------------------------------------------------


def check_centroid_kernel(n: int) -> list[str]:
    mod = area_module(n)
    out = []
    basis = area_basis(n)
    cols = [mod.delta_map(Valuation(n, {idx: 1})).to_column(basis) for idx in mu_basis(n)]
    r = rank(cols, len(basis))
    if r != len(mu_basis(n)) - 1:
        out.append(f"rank delta = {r}, expected {len(mu_basis(n)) - 1}")
    null = LinearSystem(cols, len(basis)).nullspace()
    chi_col = [PiScalar({0: int(idx == (0, 0))}) for idx in mu_basis(n)]
    if len(null) != 1 or not same_span(null, [chi_col], len(chi_col)):
        out.append("kernel of delta is not span{chi}")
    if not mod.in_centroid_kernel(mod.sphere_measure()):
        out.append("sphere measure not in image(delta)")
    angular = [d.to_column(basis) for d in mod.angular_basis()]
    for k in range(2 * n):
        # angular and image(delta) meet in a line in each degree
        rows = [i for i, idx in enumerate(basis) if idx[1] == k]
        img = [[c[i] for i in rows] for c in cols]
        ang = [[c[i] for i in rows] for c in angular]
        size = len(rows)
        meet = rank(img, size) + rank(ang, size) - rank(img + ang, size)
        if meet != 1:
            out.append(f"degree {k}: angular and image(delta) meet in dimension {meet}")
        try:
            d = mod.classical_delta(k)
        except AssertionError as exc:
            out.append(str(exc))
            continue
        if not (mod.is_angular(d) and mod.in_centroid_kernel(d)):
            out.append(f"classical Delta_{k} fails angular/centroid test")
    return out


# -- 12: angularity theorem ----------------------------------------------------


def check_angularity(n: int, max_degree: int = 4) -> list[str]:
    mod = area_module(n)
    basis = area_basis(n)
    zero = GradedPoly(Coords.TU)
    out = []
    cols = []
    for i in range(n + 1):
        for j in range(2 * n - 2 * i):
            x = mod.a_operator(_tu(i, j), zero)
            if not mod.is_angular(x):
                out.append(f"A(u^{i} t^{j}, 0) not angular")
            cols.append(x.to_column(basis))
        x = mod.a_operator(zero, _tu(i))
        if not mod.is_angular(x):
            out.append(f"A(0, u^{i}) not angular")
        cols.append(x.to_column(basis))
    ang = [d.to_column(basis) for d in mod.angular_basis()]
    if not same_span(cols, ang, len(basis)):
        out.append("image(A) != angular subspace")
    for i in range(1, n):
        for j in range(2 * n):
            x = mod.frak_b(_tu(i, j)).scale(j + 1) + mod.frak_g(_tu(i - 1, j + 1)).scale(2 * i * (2 * i + j + 2))
            if not mod.is_angular(x):
                out.append(f"(j+1) b(u^i t^j) + 2i(2i+j+2) g(u^(i-1) t^(j+1)) not angular, i={i} j={j}")
    mons = [(i, j) for i in range(max_degree // 2 + 1) for j in range(max_degree + 1) if 2 * i + j <= max_degree]
    for a, b in mons:
        if 2 * a + b >= n:
            continue
        for c, d in mons:
            if 1 + 2 * c + d >= n:
                continue
            # the matching coefficient for q is the only one that can make the pair angular
            lams = {1, -1, Fraction(1, 2)}
            if a >= 1 and c == a - 1 and d == b + 1:
                lams.add(Fraction(2 * a * (2 * a + b + 2), b + 1))
            for lam in sorted(lams):
                p, q = _tu(a, b), _tu(c, d, lam)
                cond = angularity_condition(p, q)
                ang_ok = mod.is_angular(mod.frak_b(p) + mod.frak_g(q))
                if cond != ang_ok:
                    out.append(f"condition {cond} but is_angular {ang_ok} for p={p}, q={q}")
    return out


# -- 13: magic lemma -----------------------------------------------------------


def g_u_constant(i: int) -> PiScalar:
    """Derived constant in ``g(u^i) = c_i Delta[2(n-i-1), n-i-1]``: ``(2i+1)!/(i! pi^i)``."""
    return _pi(Fraction(factorial(2 * i + 1), factorial(i)), -i)


def c_im(i: int, m: int) -> PiScalar:
    return _pi(Fraction((2 * i + 1) * comb(2 * i + 2 * m + 1, 2 * m), 4 ** (i + m) * factorial(i + m)), i + m)


def _dn(n: int, kind: str, k: int, q: int, c) -> AreaMeasure:
    both = is_valid_area(n, "B", k, q) and is_valid_area(n, "Gamma", k, q)
    if kind == "Delta":
        return delta_measure(n, k, q).scale(c)
    return null_measure(n, k, q).scale(c) if both else AreaMeasure(n)


def check_magic_lemma(n: int) -> list[str]:
    mod = area_module(n)
    out = []
    for i in range(n):
        k, q = 2 * n - 2 * i - 1, n - i - 1
        c = _pi(4**i * factorial(i), -i)
        want = B(n, k, q, c)
        if is_valid_area(n, "Gamma", k, q):
            want = want + Gamma(n, k, q, c * Fraction(-2 * i, 2 * i + 1))
        if mod.frak_b(_tu(i)) != want:
            out.append(f"b(u^{i}) = {mod.frak_b(_tu(i))}, expected {want}")
        want_g = delta_measure(n, 2 * (n - i - 1), n - i - 1).scale(g_u_constant(i))
        if mod.frak_g(_tu(i)) != want_g:
            out.append(f"g(u^{i}) = {mod.frak_g(_tu(i))}, expected {want_g}")
    for i in range(n):
        for j in range(n - i):
            lhs = mod.frak_b(_tu(i, 2 * j)).scale(comb(2 * i + 2 * j + 1, 2 * j))
            c = _pi(4 ** (i + j) * factorial(i + j), -(i + j))
            rhs = AreaMeasure(n)
            for kk in range(min(j, n - i - j - 1) + 1):
                rhs = rhs + B(n, 2 * (n - i - j) - 1, n - i - j - kk - 1, c * ((2 * kk + 1) * comb(i + j - kk, i)))
            diff = (lhs - rhs).filter(lambda key: key[0] == "B")
            if diff:
                out.append(f"b(t^{2*j} u^{i}) differs modulo Gamma by {diff}")
    # expansions in the Delta/N basis with the constants c_im
    for i in range(1, n):
        for m in range(n - i):
            K = 2 * (n - i - m) - 1
            rb, rg = AreaMeasure(n), AreaMeasure(n)
            for k in range(min(m, n - i - m - 1) + 1):
                q = n - i - m - k - 1
                dcoef = (2 * m + 1) * comb(i + m - k, i)
                ncoef = (2 * k + 1) * comb(m + i - 1 - k, i - 1)
                rb = rb + _dn(n, "Delta", K, q, dcoef) - _dn(n, "N", K, q, 2 * (i + m + 1) * ncoef)
                rg = rg + _dn(n, "Delta", K, q, dcoef) + _dn(n, "N", K, q, Fraction(2 * m + 1, 2 * i) * ncoef)
            if mod.frak_b(_tu(i, 2 * m)).scale(c_im(i, m)) != rb:
                out.append(f"c_im expansion of b(t^{2*m} u^{i}) fails")
            if mod.frak_g(_tu(i - 1, 2 * m + 1)).scale(c_im(i, m)) != rg:
                out.append(f"c_im expansion of g(t^{2*m+1} u^{i-1}) fails")
    return out


# -- 14: homomorphism properties -----------------------------------------------


def _random_scalar(rng: random.Random) -> PiScalar:
    return PiScalar({rng.randint(-2, 2): Fraction(rng.randint(-6, 6), rng.randint(1, 5))})


def check_homomorphism(n: int, samples: int = 100, seed: int = 0) -> list[str]:
    mod = area_module(n)
    alg = mod.alg
    out = []
    for idx in mu_basis(n):
        phi = Valuation(n, {idx: 1})
        for jdx in area_basis(n):
            m = AreaMeasure(n, {jdx: 1})
            if mod.glob(mod.act(phi, m)) != alg.convolution(phi, mod.glob(m)):
                out.append(f"glob(act(mu{idx}, {jdx})) != mu{idx} * glob")
    rng = random.Random(seed * 1000 + n)
    for _ in range(samples):
        phi = Valuation(n, {idx: _random_scalar(rng) for idx in mu_basis(n) if rng.random() < 0.5})
        m = AreaMeasure(n, {idx: _random_scalar(rng) for idx in area_basis(n) if rng.random() < 0.5})
        if mod.glob(mod.act(phi, m)) != alg.convolution(phi, mod.glob(m)):
            out.append(f"glob(act(phi, m)) != phi * glob(m) for phi={phi}, m={m}")
    lhs = alg.fourier(mod.glob(mod.frak_b(poly_p(n))))
    rhs = alg.from_poly(GradedPoly(Coords.ST, {(0, 1): 1}) * poly_p(n)).scale(_pi(Fraction(1, 2), 1))
    if lhs != rhs:
        out.append(f"F(glob(b(p_n))) = {lhs}, (pi/2) t p_n = {rhs}")
    # glob o A on generators
    t_hat, u_hat = alg.special("t_hat"), alg.special("u_hat")
    zero = GradedPoly(Coords.TU)
    for i in range(n + 1):
        power_u = alg.special("vol")
        for _ in range(i):
            power_u = alg.convolution(power_u, u_hat)
        for j in range(2 * n - 2 * i):
            want = power_u
            for _ in range(j + 1):
                want = alg.convolution(want, t_hat)
            want = want.scale(_pi(Fraction((j + 1) + 2 * i * (2 * i + j + 2), 2), 1))
            if mod.glob(mod.a_operator(_tu(i, j), zero)) != want:
                out.append(f"glob A(u^{i} t^{j}, 0) mismatch")
        want = alg.convolution(power_u, u_hat).scale(_pi(Fraction(1, 2), 1))
        if mod.glob(mod.a_operator(zero, _tu(i))) != want:
            out.append(f"glob A(0, u^{i}) mismatch")
    return out


def check_commutation(n: int) -> list[str]:
    mod = area_module(n)
    out = []
    for idx in area_basis(n):
        m = AreaMeasure(n, {idx: 1})
        if mod.hat_t(mod.hat_s(m)) != mod.hat_s(mod.hat_t(m)):
            out.append(f"t_hat s_hat != s_hat t_hat on {idx}")
    return out


CHECKS: dict[str, CheckFn] = {
    "poly-identities": check_poly_identities,
    "binomial": check_binomial,
    "fu-quotient": check_fu_quotient,
    "ball-eval": check_ball_eval,
    "fhat-annihilation": check_fhat_annihilation,
    "kernel-lemma": check_kernel_lemma,
    "presentation": check_presentation,
    "dimensions": check_dimensions,
    "decomposition": check_decomposition,
    "oracle-t-table": check_oracle_t_table,
    "delta-contraction": check_delta_contraction,
    "centroid-kernel": check_centroid_kernel,
    "angularity": check_angularity,
    "magic-lemma": check_magic_lemma,
    "homomorphism": check_homomorphism,
    "commutation": check_commutation,
}


def select_checks(pattern: str | None) -> list[str]:
    """Names matching a glob pattern (or a comma-separated list of them)."""
    if not pattern:
        return list(CHECKS)
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    names = [name for name in CHECKS if any(fnmatch.fnmatchcase(name, p) for p in pats)]
    if not names:
        raise KeyError(f"no check matches {pattern!r}; known: {', '.join(CHECKS)}")
    return names


def run_check(name: str, n: int) -> CheckResult:
    start = time.perf_counter()
    try:
        witness = CHECKS[name](n)
    except (AssertionError, ArithmeticError, ValueError) as exc:
        witness = [f"{type(exc).__name__}: {exc}"]
    return CheckResult(name, n, not witness, witness, time.perf_counter() - start)


def verify(n_max: int, pattern: str | None = None) -> VerifyReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    names = select_checks(pattern)
    report = VerifyReport(n_max, pattern)
    for name in names:
        for n in range(1, n_max + 1):
            report.results.append(run_check(name, n))
    return report
