from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from hermarea.linalg import InhomogeneousError, LinearSystem, rank, rref, same_span, span_contains
from hermarea.scalars import ONE, PI, PiScalar, ZERO
from tests.strategies import pi_scalars


def det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(sign)
        for i, j in enumerate(perm):
            prod *= m[i][j]
        total += prod
    return total


def minor_rank(rows: list[list[Fraction]]) -> int:
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    for size in range(min(nrows, ncols), 0, -1):
        for ri in combinations(range(nrows), size):
            for ci in combinations(range(ncols), size):
                if det([[rows[i][j] for j in ci] for i in ri]):
                    return size
    return 0


@st.composite
def homogeneous_blocks(draw, max_rows=4, max_cols=4):
    nrows = draw(st.integers(1, max_rows))
    ncols = draw(st.integers(1, max_cols))
    rpow = draw(st.lists(st.integers(-2, 2), min_size=nrows, max_size=nrows))
    cpow = draw(st.lists(st.integers(-2, 2), min_size=ncols, max_size=ncols))
    core = draw(
        st.lists(
            st.lists(st.sampled_from([Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 2)]), min_size=nrows, max_size=nrows),
            min_size=ncols,
            max_size=ncols,
        )
    )
    cols = [[PiScalar({rpow[i] + cpow[j]: core[j][i]}) for i in range(nrows)] for j in range(ncols)]
    rows = [[core[j][i] for j in range(ncols)] for i in range(nrows)]
    return cols, nrows, rows


def matvec(cols, x, nrows):
    out = [ZERO] * nrows
    for col, xj in zip(cols, x):
        for i in range(nrows):
            out[i] = out[i] + col[i] * xj
    return out


@given(homogeneous_blocks())
def test_rank_matches_minors(block):
    cols, nrows, rows = block
    assert rank(cols, nrows) == minor_rank(rows)


@given(homogeneous_blocks())
def test_nullspace(block):
    cols, nrows, _ = block
    system = LinearSystem(cols, nrows)
    null = system.nullspace()
    assert system.rank + len(null) == len(cols)
    for v in null:
        assert all(not x for x in matvec(cols, v, nrows))


@given(homogeneous_blocks(), st.data())
def test_solve_recovers_consistent_rhs(block, data):
    cols, nrows, _ = block
    x = data.draw(st.lists(pi_scalars(2), min_size=len(cols), max_size=len(cols)))
    b = matvec(cols, x, nrows)
    system = LinearSystem(cols, nrows)
    y = system.solve(b)
    assert y is not None
    assert matvec(cols, y, nrows) == b


def test_inconsistent_system():
    cols = [[ONE, ONE]]
    assert LinearSystem(cols, 2).solve([ONE, ZERO]) is None
    assert not span_contains(cols, [ONE, ZERO])
    assert span_contains(cols, [PI, PI])


def test_inhomogeneous_block_is_rejected():
    with pytest.raises(InhomogeneousError):
        LinearSystem([[ONE + PI]], 1)
    with pytest.raises(InhomogeneousError):
        LinearSystem([[ONE, ONE], [ONE, PI]], 2)


def test_rref_transform():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(3)]]
    r, piv, t = rref(rows)
    assert piv == [0, 1]
    assert r == [[1, 0], [0, 1]]
    for i in range(2):
        for j in range(2):
            assert sum(t[i][k] * rows[k][j] for k in range(2)) == r[i][j]


def test_same_span():
    a = [[ONE, ZERO], [ZERO, PI]]
    b = [[ONE, PI], [ONE, ZERO]]
    assert same_span(a, b, 2)
    assert not same_span(a, [[ONE, ZERO]], 2)
