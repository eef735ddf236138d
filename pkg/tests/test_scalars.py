import json
import math
from fractions import Fraction

import pytest
from hypothesis import given

from hermarea.scalars import ONE, PI, ZERO, PiScalar, as_scalar, format_scalar, omega
from tests.strategies import pi_monomials, pi_scalars


def approx(x: PiScalar) -> float:
    return sum(float(c) * math.pi**p for p, c in x.items())


@given(pi_scalars(), pi_scalars(), pi_scalars())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(pi_scalars(), pi_monomials())
def test_division_inverts_multiplication(a, m):
    assert (a * m).div_monomial(m) == a
    assert (a / m) * m == a


@given(pi_scalars())
def test_json_round_trip(a):
    assert PiScalar.from_json(json.loads(json.dumps(a.to_json()))) == a


@given(pi_scalars(), pi_scalars())
def test_float_evaluation_is_a_homomorphism(a, b):
    assert approx(a * b) == pytest.approx(approx(a) * approx(b), rel=1e-9, abs=1e-9)


def test_division_by_non_monomial_fails():
    with pytest.raises(ZeroDivisionError):
        ONE.div_monomial(ONE + PI)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@pytest.mark.parametrize("m", range(0, 12))
def test_omega_matches_gamma_function(m):
    expected = math.pi ** (m / 2) / math.gamma(m / 2 + 1)
    assert approx(omega(m)) == pytest.approx(expected, rel=1e-12)
    assert omega(m).is_monomial()


def test_omega_small_values():
    assert omega(0) == ONE
    assert omega(1) == as_scalar(2)
    assert omega(2) == PI
    assert omega(3) == PiScalar({1: Fraction(4, 3)})
    with pytest.raises(ValueError):
        omega(-1)


@pytest.mark.parametrize(
    "x, text",
    [
        (ZERO, "0"),
        (ONE, "1"),
        (PI, "pi"),
        (PiScalar({-1: Fraction(4, 3)}), "4/3 * pi^-1"),
        (PiScalar({-1: 1}), "pi^-1"),
        (PiScalar({-1: -2, 0: Fraction(1, 2)}), "-2 * pi^-1 + 1/2"),
        (PiScalar({0: 1, 2: -3}), "1 - 3 * pi^2"),
    ],
)
def test_format(x, text):
    assert format_scalar(x) == text == str(x)


def test_powers():
    assert PI**3 == PiScalar({3: 1})
    assert PI**-2 == PiScalar({-2: 1})
    assert (ONE + PI) ** 2 == PiScalar({0: 1, 1: 2, 2: 1})
