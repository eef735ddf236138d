"""Exact linear algebra over PiScalar entries.

The graded blocks that occur here are pi-homogeneous: after scaling row
``i`` by ``pi^-r_i`` and column ``j`` by ``pi^-c_j`` every entry becomes a
plain rational.  :class:`LinearSystem` finds such scalings, row reduces the
rational matrix with :class:`fractions.Fraction`, and then solves against
right-hand sides with arbitrary PiScalar entries.  A column space over
``Q(pi)`` spanned by rational columns is cut out by rational equations, so
membership can be tested pi-power by pi-power.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence

from .scalars import PiScalar, ZERO

__all__ = ["InhomogeneousError", "LinearSystem", "rref", "rank", "span_contains", "same_span"]


class InhomogeneousError(ValueError):
    """Matrix cannot be rescaled by pi-powers into a rational matrix."""


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int], list[list[Fraction]]]:
    """Gauss-Jordan elimination.

    Returns ``(R, pivots, T)`` with ``T @ rows == R`` and ``R`` in reduced row
    echelon form; ``pivots[i]`` is the pivot column of row ``i``.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    a = [list(r) for r in rows]
    t = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        t[r], t[piv] = t[piv], t[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        t[r] = [x * inv for x in t[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return a, pivots, t


def _homogenize(columns: Sequence[Sequence[PiScalar]], nrows: int) -> tuple[list[int], list[int]]:
    """Find ``r, c`` with ``columns[j][i] = rational * pi^(r_i + c_j)``."""
    ncols = len(columns)
    row_pow: list[int | None] = [None] * nrows
    col_pow: list[int | None] = [None] * ncols
    entries: dict[tuple[str, int], list[tuple[int, int]]] = {}
    for j, col in enumerate(columns):
        for i, x in enumerate(col):
            if not x:
                continue
            if not x.is_monomial():
                raise InhomogeneousError(f"entry ({i},{j}) = {x} is not a pi-monomial")
            _, p = x.monomial_parts()
            entries.setdefault(("c", j), []).append((i, p))
            entries.setdefault(("r", i), []).append((j, p))
    for start in range(ncols):
        if col_pow[start] is not None:
            continue
        col_pow[start] = 0
        queue = deque([("c", start)])
        while queue:
            kind, idx = queue.popleft()
            for other, p in entries.get((kind, idx), []):
                if kind == "c":
                    want = p - col_pow[idx]
                    if row_pow[other] is None:
                        row_pow[other] = want
                        queue.append(("r", other))
                    elif row_pow[other] != want:
                        raise InhomogeneousError("block is not pi-homogeneous")
                else:
                    want = p - row_pow[idx]
                    if col_pow[other] is None:
                        col_pow[other] = want
                        queue.append(("c", other))
                    elif col_pow[other] != want:
                        raise InhomogeneousError("block is not pi-homogeneous")
    return [p or 0 for p in row_pow], [p or 0 for p in col_pow]


class LinearSystem:
    """The matrix whose columns are ``columns`` (each of length ``nrows``)."""

    def __init__(self, columns: Sequence[Sequence[PiScalar]], nrows: int):
        self.nrows = nrows
        self.ncols = len(columns)
        for col in columns:
            if len(col) != nrows:
                raise ValueError("column length mismatch")
        self.row_pow, self.col_pow = _homogenize(columns, nrows)
        rows = [
            [
                columns[j][i].shift(-self.row_pow[i] - self.col_pow[j]).to_fraction()
                for j in range(self.ncols)
            ]
            for i in range(nrows)
        ]
        if nrows:
            self.reduced, self.pivots, self.transform = rref(rows)
        else:
            self.reduced, self.pivots, self.transform = [], [], []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce_rhs(self, rhs: Sequence[PiScalar]) -> list[PiScalar]:
        scaled = [x.shift(-p) for x, p in zip(rhs, self.row_pow)]
        out = []
        for trow in self.transform:
            acc = ZERO
            for f, x in zip(trow, scaled):
                if f and x:
                    acc = acc + x * f
            out.append(acc)
        return out

    def solve(self, rhs: Sequence[PiScalar]) -> list[PiScalar] | None:
        """Basic solution (free variables zero), or ``None`` if inconsistent."""
        if len(rhs) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        w = self._reduce_rhs(rhs)
        if any(w[i] for i in range(self.rank, self.nrows)):
            return None
        x = [ZERO] * self.ncols
        for i, col in enumerate(self.pivots):
            x[col] = w[i].shift(-self.col_pow[col])
        return x

    def contains(self, rhs: Sequence[PiScalar]) -> bool:
        return self.solve(rhs) is not None

    def nullspace(self) -> list[list[PiScalar]]:
        pivset = set(self.pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            y = [Fraction(0)] * self.ncols
            y[free] = Fraction(1)
            for i, col in enumerate(self.pivots):
                y[col] = -self.reduced[i][free]
            basis.append([PiScalar({-self.col_pow[j]: y[j]}) for j in range(self.ncols)])
        return basis


def rank(columns: Sequence[Sequence[PiScalar]], nrows: int) -> int:
    return LinearSystem(columns, nrows).rank


def span_contains(columns: Sequence[Sequence[PiScalar]], v: Sequence[PiScalar]) -> bool:
    return LinearSystem(columns, len(v)).contains(v)


def same_span(a: Sequence[Sequence[PiScalar]], b: Sequence[Sequence[PiScalar]], nrows: int) -> bool:
    """Double inclusion by ranks: ``rank A = rank B = rank [A | B]``."""
    ra = rank(a, nrows)
    rb = rank(b, nrows)
    return ra == rb == rank(list(a) + list(b), nrows)
