from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hermarea.linalg import rank
from hermarea.poly import Coords, GradedPoly, fu_f, monomials, poly_p
from hermarea.scalars import PiScalar
from hermarea.valalg import Valuation, algebra, chi, dim_val, mu, mu_basis, mu_degree_basis, vol
from tests.strategies import valuations

NS = [1, 2, 3, 4]


def pi_inv(c) -> PiScalar:
    return PiScalar({-1: Fraction(c)})


def test_dimensions():
    assert dim_val(2, 2) == 2
    assert all(dim_val(n, 0) == 1 == dim_val(n, 2 * n) for n in range(1, 7))
    assert sum(dim_val(2, k) for k in range(5)) == 6
    for n in range(1, 7):
        assert sum(dim_val(n, k) for k in range(2 * n + 1)) == (n + 1) * (n + 2) // 2
        for k in range(2 * n + 1):
            assert dim_val(n, k) == len(mu_degree_basis(n, k))
    with pytest.raises(ValueError):
        dim_val(2, 5)


def test_invalid_index():
    with pytest.raises(ValueError, match="max\\(0, k-n\\)"):
        mu(2, 4, 1)


def test_fourier_examples():
    A = algebra(2)
    assert A.fourier(mu(2, 1, 0)) == mu(2, 3, 1)
    assert A.fourier(chi(2)) == vol(2)


def test_mult_s_examples():
    A = algebra(2)
    s = Valuation(2, {(2, 0): PiScalar({-1: Fraction(1, 2)}), (2, 1): pi_inv(1)})
    assert A.mult_s(chi(2)) == s == A.special("s")
    assert not A.mult_s(vol(2))
    assert set(A.mult_s(mu(2, 2, 1)).degrees()) == {4}


def test_hat_t_examples():
    A = algebra(2)
    assert A.hat_t(mu(2, 2, 1)) == mu(2, 1, 0, pi_inv(Fraction(4, 3)))
    assert not A.hat_t(chi(2))
    assert A.hat_t(vol(2)) == A.special("t_hat")


def test_t_is_two_over_pi_mu10():
    for n in NS:
        assert algebra(n).special("t") == mu(n, 1, 0, pi_inv(2))


def test_u_lives_on_mu21():
    # u = 4s - t^2 is a nonzero degree-2 element also at n = 1, where mu[2,0] does not exist
    for n in NS:
        assert algebra(n).special("u") == mu(n, 2, 1, pi_inv(2))
        assert algebra(n).special("u_hat") == mu(n, 2 * n - 2, n - 1, pi_inv(2))


def test_s_hat():
    A = algebra(3)
    assert A.special("s_hat") == Valuation(3, {(4, 2): pi_inv(1), (4, 1): pi_inv(Fraction(1, 2))})


@pytest.mark.parametrize("n", NS)
def test_products_of_generators_commute(n):
    A = algebra(n)
    for idx in mu_basis(n):
        v = Valuation(n, {idx: 1})
        assert A.mult_s(A.mult_t(v)) == A.mult_t(A.mult_s(v))
        assert A.hat_s(A.hat_t(v)) == A.hat_t(A.hat_s(v))


@pytest.mark.parametrize("n", NS)
def test_units(n):
    A = algebra(n)
    for idx in mu_basis(n):
        v = Valuation(n, {idx: 1})
        assert A.product(chi(n), v) == v
        assert A.convolution(vol(n), v) == v


@pytest.mark.parametrize("n", NS)
@given(data=st.data())
def test_fourier_exchanges_product_and_convolution(n, data):
    A = algebra(n)
    a, b = data.draw(valuations(n)), data.draw(valuations(n))
    assert A.fourier(A.fourier(a)) == a
    assert A.fourier(A.product(a, b)) == A.convolution(A.fourier(a), A.fourier(b))
    assert A.product(a, b) == A.product(b, a)


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_product_is_associative(n, data):
    A = algebra(n)
    a, b, c = (data.draw(valuations(n)) for _ in range(3))
    assert A.product(A.product(a, b), c) == A.product(a, A.product(b, c))


@pytest.mark.parametrize("n", NS)
@given(data=st.data())
def test_to_poly_is_a_section(n, data):
    A = algebra(n)
    v = data.draw(valuations(n))
    assert A.from_poly(A.to_poly(v)) == v


def test_to_poly_examples():
    A = algebra(3)
    assert A.to_poly(chi(3)) == GradedPoly.constant(1)
    assert A.to_poly(Valuation(3)) == GradedPoly.zero()
    t3 = GradedPoly(Coords.ST, {(0, 3): 1})
    assert A.to_poly(A.from_poly(t3)) == t3


@pytest.mark.parametrize("n", NS)
def test_from_poly_is_multiplicative(n):
    A = algebra(n)
    for d1 in range(3):
        for d2 in range(3):
            for p in monomials(d1):
                for q in monomials(d2):
                    assert A.from_poly(p * q) == A.product(A.from_poly(p), A.from_poly(q))


@pytest.mark.parametrize("n", range(1, 6))
def test_fu_relations_and_injectivity(n):
    A = algebra(n)
    assert not A.from_poly(fu_f(n + 1))
    assert not A.from_poly(fu_f(n + 2))
    for d in range(n + 1):
        rows = mu_degree_basis(n, d)
        cols = [A.from_poly(m).to_column(rows) for m in monomials(d)]
        assert rank(cols, len(rows)) == len(cols)


def test_ball_examples():
    A = algebra(2)
    assert A.eval_ball_top(A.from_poly(GradedPoly(Coords.ST, {(0, 4): 1}))) == PiScalar({0: 6})
    assert A.eval_ball_top(A.from_poly(GradedPoly(Coords.ST, {(1, 2): 1}))) == PiScalar({0: 2})
    with pytest.raises(ValueError):
        A.eval_ball_top(chi(2))


@pytest.mark.parametrize("n", range(1, 6))
def test_ball_top_values(n):
    A = algebra(n)
    t_top = A.from_poly(GradedPoly(Coords.ST, {(0, 2 * n): 1}))
    assert A.eval_ball_top(t_top) == PiScalar({0: comb(2 * n, n)})
    tp = A.from_poly(GradedPoly(Coords.ST, {(0, n): 1}) * poly_p(n))
    assert A.eval_ball_top(tp) == PiScalar({0: (-2) ** n})


def test_json_round_trip():
    v = Valuation(2, {(2, 1): pi_inv(3), (0, 0): 1})
    assert Valuation.from_json(v.to_json()) == v
    assert set(v.to_json()["coeffs"]) == {"mu_0_0", "mu_2_1"}


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        algebra(2).product(chi(2), chi(3))
