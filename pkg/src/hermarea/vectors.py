"""Sparse coefficient vectors shared by valuations and area measures."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, TypeVar

from .scalars import PiScalar, ScalarLike, ZERO, as_scalar

V = TypeVar("V", bound="SparseVector")


class SparseVector:
    """Immutable map ``index -> PiScalar`` with no zero entries, tagged by ``n``."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Hashable, ScalarLike] | None = None):
        self.n = n
        clean = {}
        for key, c in (coeffs or {}).items():
            c = as_scalar(c)
            if c:
                self._validate(key)
                clean[key] = c
        self._coeffs = clean

    def _validate(self, key) -> None:  # pragma: no cover - overridden
        pass

    @classmethod
    def _raw(cls: type[V], n: int, coeffs: dict) -> V:
        obj = cls.__new__(cls)
        obj.n = n
        obj._coeffs = coeffs
        return obj

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: self.sort_key(kv[0]))

    @staticmethod
    def sort_key(key):
        return key

    def coefficient(self, key) -> PiScalar:
        return self._coeffs.get(key, ZERO)

    def __getitem__(self, key) -> PiScalar:
        return self.coefficient(key)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def _same(self, other: "SparseVector") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __add__(self: V, other: V) -> V:
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        out = dict(self._coeffs)
        for key, c in other._coeffs.items():
            v = out.get(key, ZERO) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return type(self)._raw(self.n, out)

    def __radd__(self: V, other) -> V:
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self: V) -> V:
        return type(self)._raw(self.n, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self: V, other: V) -> V:
        return self + (-other)

    def scale(self: V, c: ScalarLike) -> V:
        c = as_scalar(c)
        if not c:
            return type(self)._raw(self.n, {})
        return type(self)._raw(self.n, {k: v * c for k, v in self._coeffs.items()})

    def __mul__(self: V, c: ScalarLike) -> V:
        if isinstance(c, SparseVector):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.n, frozenset(self._coeffs.items())))

    def map_keys(self: V, fn: Callable) -> V:
        out: dict = {}
        for key, c in self._coeffs.items():
            new = fn(key)
            if new is not None:
                v = out.get(new, ZERO) + c
                if v:
                    out[new] = v
                else:
                    out.pop(new, None)
        return type(self)._raw(self.n, out)

    def filter(self: V, pred: Callable) -> V:
        return type(self)._raw(self.n, {k: c for k, c in self._coeffs.items() if pred(k)})

    def to_column(self, basis: Iterable) -> list[PiScalar]:
        return [self._coeffs.get(b, ZERO) for b in basis]

    @classmethod
    def from_column(cls: type[V], n: int, basis: Iterable, column: Iterable[PiScalar]) -> V:
        return cls(n, dict(zip(basis, column)))


def apply_table(table: Mapping, v: SparseVector, out_cls: type | None = None):
    """Linear extension of ``table[basis_index] -> vector`` to ``v``."""
    out = None
    for key, c in v._coeffs.items():
        img = table[key]
        if not img:
            continue
        term = img.scale(c)
        out = term if out is None else out + term
    if out is None:
        return (out_cls or type(v))._raw(v.n, {})
    return out


def format_terms(items: Iterable[tuple[str, PiScalar]]) -> str:
    """Render ``[(name, coeff), ...]`` as ``c * name + ...``; ``0`` if empty."""
    pieces: list[str] = []
    for name, c in items:
        neg = False
        if c.is_monomial():
            neg = c.monomial_parts()[0] < 0
            scalar = str(-c if neg else c)
        else:
            scalar = f"({c})"
        body = name if scalar == "1" else f"{scalar} * {name}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces) if pieces else "0"
