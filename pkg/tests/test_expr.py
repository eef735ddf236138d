from fractions import Fraction

import pytest

from hermarea.areamod import B, Gamma, area_module, null_measure
from hermarea.expr import ExprError, evaluate, evaluate_as, parse, tokenize
from hermarea.poly import Coords, GradedPoly, poly_p
from hermarea.scalars import PiScalar
from hermarea.valalg import Valuation, algebra, mu


def test_tokenize_positions():
    toks = tokenize("B[3, 1] + pi")
    assert [t.text for t in toks][:3] == ["B", "[", "3"]
    assert toks[0].pos == 0
    assert any(t.text == "pi" and t.pos == 10 for t in toks)


def test_scalar_arithmetic():
    assert evaluate("2/3*pi^-1") == PiScalar({-1: Fraction(2, 3)})
    assert evaluate("(1 + pi)^2") == PiScalar({0: 1, 1: 2, 2: 1})
    assert evaluate("-pi") == PiScalar({1: -1})


def test_polynomials():
    assert evaluate("p[2]") == poly_p(2, Coords.ST)
    assert evaluate("t^2 - s") == poly_p(2, Coords.ST)
    assert evaluate("u") == GradedPoly(Coords.ST, {(1, 0): 4, (0, 2): -1})
    assert evaluate("t*s + 1") == GradedPoly(Coords.ST, {(1, 1): 1, (0, 0): 1})


def test_valuations():
    A = algebra(2)
    assert evaluate("mu[2,1]", 2) == mu(2, 2, 1)
    # polynomial generators stay polynomials until coerced
    assert evaluate_as("t*t", "valuation", 2) == A.product(A.special("t"), A.special("t"))
    assert evaluate("mu[1,0]*mu[1,0]", 2) == A.product(mu(2, 1, 0), mu(2, 1, 0))
    assert evaluate("2/pi*mu[2,1]", 2) == evaluate_as("u", "valuation", 2)
    assert evaluate("vol", 2) == A.special("vol")
    assert isinstance(evaluate("t_hat + 1", 2), Valuation)


def test_measures():
    assert evaluate("B[3,1] + 2*Gamma[2,1]", 2) == B(2, 3, 1) + Gamma(2, 2, 1, 2)
    assert evaluate("N[1,0]", 2) == null_measure(2, 1, 0)
    assert evaluate("Gamma[2,1]/pi", 2) == Gamma(2, 2, 1, PiScalar({-1: 1}))
    assert evaluate_as("0", "measure", 2) == B(2, 1, 0, 0)


def test_evaluate_as_poly_and_valuation():
    assert evaluate_as("3", "poly") == GradedPoly.constant(3)
    assert evaluate_as("mu[1,0]", "valuation", 2) == mu(2, 1, 0)
    with pytest.raises(ExprError):
        evaluate_as("B[1,0]", "valuation", 2)
    with pytest.raises(ExprError):
        evaluate_as("mu[1,0]", "measure", 2)


@pytest.mark.parametrize(
    "text, n, fragment",
    [
        ("B[2,1]", 2, "not a valid"),
        ("mu[1,0]", None, "needs --n"),
        ("B[1,0] * B[1,0]", 2, "only be scaled"),
        ("B[1,0] + mu[1,0]", 2, "cannot add"),
        ("t / (1 + pi)", 2, "pi-monomial"),
        ("t^-1", None, "negative powers"),
        ("foo", None, "unknown generator"),
        ("mu[1]", 2, "expects 2"),
        ("N[0,0]", 2, "needs both"),
        ("f[0]", None, "undefined"),
    ],
)
def test_errors(text, n, fragment):
    with pytest.raises(ExprError, match=fragment) as info:
        evaluate(text, n)
    assert str(info.value).count("at position") <= 1


@pytest.mark.parametrize("text", ["1 +", "(1", "B[1,", "1 $ 2", "mu[1,0]]"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ExprError) as info:
        parse(text)
    assert info.value.pos is not None
    assert str(info.value).endswith(f"at position {info.value.pos}")


def test_error_position_points_at_generator():
    with pytest.raises(ExprError) as info:
        evaluate("1 + B[2,1]", 2)
    assert info.value.pos == 4


def test_expression_acts_like_the_api():
    mod, A = area_module(3), algebra(3)
    phi = evaluate_as("2*t_hat + pi*s_hat", "valuation", 3)
    m = evaluate("B[5,2]", 3)
    assert mod.act(phi, m) == mod.hat_t(m).scale(2) + mod.hat_s(m).scale(PiScalar({1: 1}))
    # ^ on valuations is the Alesker product, not convolution
    sq = evaluate("t_hat^2", 3)
    assert sq == A.product(A.special("t_hat"), A.special("t_hat"))
