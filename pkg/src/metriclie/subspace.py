"""Subspaces of Q^n in canonical reduced-echelon form."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeError
from .linalg import Matrix, Vector, format_fraction, nullspace, row_basis, vector


def _pivot(row: Vector) -> int:
    return next(j for j, x in enumerate(row) if x)


class Subspace:
    """A subspace stored by its rref basis, so equal subspaces compare equal."""

    __slots__ = ("ambient_dim", "vectors", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [vector(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ShapeError("vector length does not match the ambient dimension")
        self.ambient_dim = ambient_dim
        self.vectors: tuple[Vector, ...] = tuple(row_basis(vecs, ambient_dim))
        self._pivots = tuple(_pivot(r) for r in self.vectors)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, (tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, m: Matrix) -> "Subspace":
        return cls(m.rows, m.columns())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def basis(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        if not self.vectors:
            return Matrix.zeros(self.ambient_dim, 0)
        return Matrix.from_columns(self.vectors)

    def is_zero(self) -> bool:
        return not self.vectors

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, v: Sequence) -> list[Fraction]:
        """Residual of ``v`` after eliminating the pivot coordinates."""
        w = list(vector(v))
        for row, p in zip(self.vectors, self._pivots):
            c = w[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= c * x
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in ``self.vectors``; raises if ``v`` is outside."""
        v = vector(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self._pivots)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.vectors)

    __le__ = issubspace

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.vectors + other.vectors)

    def annihilator(self) -> "Subspace":
        """``{x : x . v = 0 for v in self}`` under the standard dot product."""
        if not self.vectors:
            return Subspace.full(self.ambient_dim)
        return Subspace(self.ambient_dim, nullspace(Matrix(self.vectors)))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def complement_coordinates(self) -> list[int]:
        """Coordinate indices spanning a complement (the non-pivot columns)."""
        piv = set(self._pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(format_fraction(x) for x in v) + ")" for v in self.vectors)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: [{vs}])"

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(x) for x in v] for v in self.vectors]


class IncrementalSpan:
    """Growing span kept in Gauss-Jordan form; ``add`` reports new directions."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def residual(self, v: Sequence) -> list[Fraction]:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= c * x
        return w

    def add(self, v: Sequence) -> bool:
        w = self.residual(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return False
        c = w[p]
        w = [x / c for x in w]
        for row in self.rows:
            a = row[p]
            if a:
                for j, x in enumerate(w):
                    if x:
                        row[j] -= a * x
        self.rows.append(w)
        self.pivots.append(p)
        return True

    def __len__(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        return Subspace(self.ambient_dim, self.rows)
