from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hermarea.poly import (
    Coords,
    GradedPoly,
    apply_diff,
    binomial_identity,
    convert,
    format_poly,
    fu_f,
    monomials,
    poly_p,
    poly_q,
    s_var,
    t_var,
    u_var,
)
from tests.strategies import fractions


def evaluate(p: GradedPoly, s, t) -> Fraction:
    p = convert(p, Coords.ST)
    return sum((c.to_fraction() * s**a * t**b for (a, b), c in p.items()), Fraction(0))


def series_coefficients(s, t, kind: str, order: int) -> list[Fraction]:
    """Coefficients of log(1+y), 1/(1+y) or -1/(1+y)^2 with y = t x + s x^2."""
    # y^m = sum_j C(m, j) t^(m-j) s^j x^(m+j)
    coeffs = [Fraction(0)] * (order + 1)
    for m in range(0, order + 1):
        if kind == "log":
            if m == 0:
                continue
            w = Fraction((-1) ** (m + 1), m)
        elif kind == "inv":
            w = Fraction((-1) ** m)
        else:
            w = Fraction(-(m + 1) * (-1) ** m)
        for j in range(m + 1):
            if m + j <= order:
                coeffs[m + j] += w * comb(m, j) * t ** (m - j) * s**j
    return coeffs


polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 4)), fractions, max_size=5
).map(lambda d: GradedPoly(Coords.ST, d))


@pytest.mark.parametrize("s, t", [(Fraction(2, 3), Fraction(-5, 7)), (Fraction(-3), Fraction(1, 2))])
def test_families_match_generating_functions(s, t):
    order = 12
    logc = series_coefficients(s, t, "log", order)
    invc = series_coefficients(s, t, "inv", order)
    sqc = series_coefficients(s, t, "sq", order)
    for k in range(1, order + 1):
        assert evaluate(fu_f(k), s, t) == logc[k]
    for k in range(0, order + 1):
        assert evaluate(poly_p(k), s, t) == invc[k]
        assert evaluate(poly_q(k), s, t) == sqc[k]


def test_small_examples():
    assert format_poly(poly_p(2)) == "t^2 - s"
    assert format_poly(fu_f(1)) == "t"
    assert format_poly(fu_f(2)) == "-1/2 * t^2 + s"
    assert fu_f(3, Coords.TU) == GradedPoly(Coords.TU, {(0, 3): Fraction(1, 12), (1, 1): Fraction(-1, 4)})
    assert format_poly(fu_f(3, Coords.TU)) == "1/12 * t^3 - 1/4 * t * u"
    assert poly_q(0) == GradedPoly.constant(-1)


@pytest.mark.parametrize("k", range(1, 13))
def test_families_are_homogeneous(k):
    for p in (fu_f(k), poly_p(k), poly_q(k)):
        assert p.is_homogeneous(k)


@given(polys)
def test_coordinate_change_round_trip(p):
    assert convert(convert(p, Coords.TU), Coords.ST) == p
    assert p.degrees() == convert(p, Coords.TU).degrees()


@given(polys, polys)
def test_conversion_is_a_ring_map(p, q):
    assert convert(p * q, Coords.TU) == convert(p, Coords.TU) * convert(q, Coords.TU)
    assert convert(p + q, Coords.TU) == convert(p, Coords.TU) + convert(q, Coords.TU)


def test_u_is_four_s_minus_t_squared():
    assert convert(u_var(), Coords.ST) == s_var() * 4 - t_var() * t_var()


@given(polys, polys)
def test_derivatives_obey_leibniz(p, q):
    p, q = convert(p, Coords.TU), convert(q, Coords.TU)
    for op in ("d_t", "d_u", "t_d_t", "u_d_u"):
        assert apply_diff(op, p * q) == apply_diff(op, p) * q + p * apply_diff(op, q)


def test_apply_diff_rejects_st_and_unknown_ops():
    with pytest.raises(ValueError):
        apply_diff("d_t", s_var())
    with pytest.raises(ValueError):
        apply_diff("d_x", u_var())


@pytest.mark.parametrize("n", range(0, 21))
def test_binomial_identity(n):
    total, expected = binomial_identity(n)
    assert total == expected == 2**n


def test_monomials_order():
    assert monomials(4) == [
        GradedPoly(Coords.ST, {(0, 4): 1}),
        GradedPoly(Coords.ST, {(1, 2): 1}),
        GradedPoly(Coords.ST, {(2, 0): 1}),
    ]


@given(polys)
def test_json_round_trip(p):
    assert GradedPoly.from_json(p.to_json()) == p


def test_invalid_arguments():
    with pytest.raises(ValueError):
        fu_f(0)
    with pytest.raises(ValueError):
        poly_p(-1)
    with pytest.raises(ValueError):
        GradedPoly(Coords.ST, {(-1, 0): 1})
    with pytest.raises(ValueError):
        s_var() + u_var()
