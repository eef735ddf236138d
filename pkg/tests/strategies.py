"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from hermarea.areamod import AreaMeasure, area_basis
from hermarea.scalars import PiScalar
from hermarea.valalg import Valuation, mu_basis

fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
nonzero_fractions = fractions.filter(bool)


def pi_scalars(max_terms: int = 3):
    return st.dictionaries(st.integers(-3, 3), fractions, max_size=max_terms).map(PiScalar)


def pi_monomials():
    return st.builds(lambda c, p: PiScalar({p: c}), nonzero_fractions, st.integers(-3, 3))


def valuations(n: int):
    return st.dictionaries(st.sampled_from(mu_basis(n)), pi_monomials(), max_size=6).map(
        lambda d: Valuation(n, d)
    )


def measures(n: int):
    return st.dictionaries(st.sampled_from(area_basis(n)), pi_monomials(), max_size=6).map(
        lambda d: AreaMeasure(n, d)
    )
