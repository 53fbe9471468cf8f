"""Lie algebras given by rational structure constants.

``[e_i, e_j] = sum_k c_ijk e_k``.  Only ``i < j`` entries are stored; the
rest follows from antisymmetry.  The Jacobi identity is checked when an
algebra is built unless the caller vouches for it.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import JacobiError, NonSolvable, NotAnIdeal, SchemaError, ShapeError
from .linalg import Matrix, _int_matmul, Vector, format_fraction, inverse, nullspace, to_fraction, vector
from .subspace import Subspace

ZERO = Fraction(0)


class LieAlgebra:
    __slots__ = ("dim", "basis_names", "_table", "_sparse")

    def __init__(self, dim: int, brackets: Iterable = (), basis_names: Sequence[str] | None = None,
                 check: bool = True):
        if dim < 0:
            raise ShapeError("dimension must be non-negative")
        self.dim = dim
        if basis_names is None:
            basis_names = [f"e{i}" for i in range(dim)]
        if len(basis_names) != dim:
            raise SchemaError("basis_names length differs from dim")
        self.basis_names = tuple(basis_names)
        table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        seen = set()
        for i, j, k, c in brackets:
            c = to_fraction(c)
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise SchemaError(f"bracket index out of range: ({i}, {j}, {k})")
            if i >= j:
                raise SchemaError(f"bracket entries need i < j, got ({i}, {j})")
            if (i, j, k) in seen:
                raise SchemaError(f"duplicate bracket entry ({i}, {j}, {k})")
            seen.add((i, j, k))
            table[i][j][k] = c
            table[j][i][k] = -c
        self._table = tuple(tuple(tuple(v) for v in row) for row in table)
        self._sparse = tuple(tuple(tuple((k, c) for k, c in enumerate(v) if c) for v in row)
                             for row in table)
        if check:
            bad = self.jacobi_violation()
            if bad is not None:
                raise JacobiError(f"Jacobi identity fails on basis triple {bad}")

    @classmethod
    def from_table(cls, table: Sequence[Sequence[Sequence]], basis_names=None,
                   check: bool = True) -> "LieAlgebra":
        """Build from a dense table ``table[i][j] = [e_i, e_j]``; must be antisymmetric."""
        n = len(table)
        entries = []
        for i in range(n):
            for j in range(n):
                a = vector(table[i][j])
                b = vector(table[j][i])
                if any(x + y for x, y in zip(a, b)):
                    raise SchemaError("bracket table is not antisymmetric")
                if i < j:
                    entries.extend((i, j, k, c) for k, c in enumerate(a) if c)
        return cls(n, entries, basis_names, check=check)

    @classmethod
    def abelian(cls, n: int, basis_names=None) -> "LieAlgebra":
        return cls(n, (), basis_names, check=False)

    # -- brackets ---------------------------------------------------------
    def structure(self, i: int, j: int) -> Vector:
        return self._table[i][j]

    def brackets(self) -> list[tuple[int, int, int, Fraction]]:
        n = self.dim
        return [(i, j, k, c) for i in range(n) for j in range(i + 1, n)
                for k, c in enumerate(self._table[i][j]) if c]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ShapeError("vector length does not match algebra dimension")
        out = [ZERO] * n
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._table[i]
            for j, b in ynz:
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]`` (columns are ``[x, e_j]``)."""
        x = vector(x)
        if len(x) != self.dim:
            raise ShapeError("vector length does not match algebra dimension")
        n = self.dim
        cols = []
        xnz = [(i, a) for i, a in enumerate(x) if a]
        sparse = self._sparse
        for j in range(n):
            col = [ZERO] * n
            for i, a in xnz:
                for k, c in sparse[i][j]:
                    col[k] += a * c
            cols.append(col)
        if n == 0:
            return Matrix.zeros(0)
        return Matrix(zip(*cols))

    def ad_basis(self, i: int) -> Matrix:
        return self.ad(self.unit(i))

    def unit(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def units(self) -> list[Vector]:
        return [self.unit(i) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return all(not any(v) for row in self._table for v in row)

    def jacobi_violation(self) -> tuple[int, int, int] | None:
        for i, j, k in combinations(range(self.dim), 3):
            ei, ej, ek = self.unit(i), self.unit(j), self.unit(k)
            s = [a + b + c for a, b, c in zip(self.bracket(self._table[i][j], ek),
                                              self.bracket(self._table[j][k], ei),
                                              self.bracket(self._table[k][i], ej))]
            if any(s):
                return (i, j, k)
        return None

    # -- constructions ------------------------------------------------------
    def change_basis(self, p: Matrix, basis_names=None) -> "LieAlgebra":
        """Same algebra in the basis given by the columns of invertible ``p``."""
        pinv = inverse(p)
        cols = p.columns()
        n = self.dim
        table = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                table[a][b] = pinv @ self.bracket(cols[a], cols[b]) if a < b else None
        entries = [(a, b, k, c) for a in range(n) for b in range(a + 1, n)
                   for k, c in enumerate(table[a][b]) if c]
        return LieAlgebra(n, entries, basis_names or self.basis_names, check=False)

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        n = self.dim
        entries = self.brackets() + [(i + n, j + n, k + n, c) for i, j, k, c in other.brackets()]
        names = list(self.basis_names) + list(other.basis_names)
        if len(set(names)) != len(names):
            names = [f"e{i}" for i in range(n + other.dim)]
        return LieAlgebra(n + other.dim, entries, names, check=False)

    # -- identity / io ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, self._table))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.brackets())})"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis_names": list(self.basis_names),
            "brackets": [{"i": i, "j": j, "k": k, "c": format_fraction(c)}
                         for i, j, k, c in self.brackets()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        try:
            dim = data["dim"]
            names = data.get("basis_names")
            raw = data.get("brackets", [])
            if not isinstance(dim, int) or isinstance(dim, bool):
                raise SchemaError("dim must be an integer")
            entries = []
            for e in raw:
                i, j, k = e["i"], e["j"], e["k"]
                if not all(isinstance(t, int) and not isinstance(t, bool) for t in (i, j, k)):
                    raise SchemaError("bracket indices must be integers")
                if not isinstance(e["c"], (str, int)) or isinstance(e["c"], bool):
                    raise SchemaError("bracket coefficient must be a 'p/q' string")
                entries.append((i, j, k, to_fraction(e["c"])))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(f"malformed Lie algebra data: {exc}") from exc
        return cls(dim, entries, names)


# ---------------------------------------------------------------------------
# structural subspaces
# ---------------------------------------------------------------------------

def ad(g: LieAlgebra, x: Sequence) -> Matrix:
    return g.ad(x)


def bracket_subspaces(g: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """``span{[u_i, v_j]}``."""
    return Subspace(g.dim, [g.bracket(a, b) for a in u.vectors for b in v.vectors])


def is_ideal(g: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(e, v)) for e in g.units() for v in s.vectors)


def ideal_generated_by(g: LieAlgebra, s: Subspace) -> Subspace:
    full = Subspace.full(g.dim)
    cur = s
    while True:
        nxt = cur + bracket_subspaces(g, full, cur)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def derived_series(g: LieAlgebra) -> list[Subspace]:
    series = [Subspace.full(g.dim)]
    while True:
        nxt = bracket_subspaces(g, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    full = Subspace.full(g.dim)
    series = [full]
    while True:
        nxt = bracket_subspaces(g, full, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].is_zero()


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].is_zero()


def centralizer(g: LieAlgebra, s: Subspace) -> Subspace:
    """``{x : [x, s] = 0}``."""
    if s.is_zero():
        return Subspace.full(g.dim)
    rows = []
    for v in s.vectors:
        rows.extend(g.ad(v).data)
    return Subspace(g.dim, nullspace(Matrix(rows, g.dim)))


def center(g: LieAlgebra) -> Subspace:
    return centralizer(g, Subspace.full(g.dim))


def restricted_center(g: LieAlgebra, s: Subspace) -> Subspace:
    """Center of the subalgebra ``s``: ``s`` intersected with its centralizer."""
    return s & centralizer(g, s)


def _int_echelon_add(rows: list[tuple[int, list[int]]], v: list[int]) -> bool:
    """Insert ``v`` into an integer row echelon form sorted by pivot; False if dependent."""
    w = list(v)
    for p, row in rows:
        c = w[p]
        if c:
            a = row[p]
            w = [a * x - c * y for x, y in zip(w, row)]
    lead = next((j for j, x in enumerate(w) if x), None)
    if lead is None:
        return False
    g = 0
    for x in w:
        if x:
            g = gcd(g, x)
    w = [x // g for x in w]
    k = 0
    while k < len(rows) and rows[k][0] < lead:
        k += 1
    rows.insert(k, (lead, w))
    return True


def _associative_envelope(mats: list[list[list[int]]]) -> list[list[list[int]]]:
    """Basis of the associative (non-unital) algebra generated by integer matrices."""
    rows: list[tuple[int, list[int]]] = []
    basis = []
    frontier = []

    def offer(m):
        if _int_echelon_add(rows, [x for r in m for x in r]):
            basis.append(m)
            frontier.append(m)

    for m in mats:
        offer(m)
    while frontier:
        b = frontier.pop()
        for m in mats:
            offer(_int_matmul(b, m))
    return basis


def nilradical(g: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal of a solvable algebra.

    ``ad(g)`` spans a matrix algebra ``A``; in characteristic zero its
    radical is ``{a in A : tr(ab) = 0 for b in A}``.  For solvable ``g``
    ``ad(x)`` is nilpotent exactly when it lies in that radical.
    """
    if not is_solvable(g):
        raise NonSolvable("nilradical requires a solvable Lie algebra")
    n = g.dim
    den = 1
    for i in range(n):
        for x in g.ad_basis(i).data:
            for y in x:
                den = den * y.denominator // gcd(den, y.denominator)
    ads = [[[int(y * den) for y in r] for r in g.ad_basis(i).data] for i in range(n)]
    env = _associative_envelope([a for a in ads if any(any(r) for r in a)])
    if not env:
        return Subspace.full(n)
    # tr(a b) = sum_{ij} a[i][j] b[j][i]
    rows = [[sum(a[i][j] * b[j][i] for i in range(n) for j in range(n)) for a in ads] for b in env]
    return Subspace(n, nullspace(Matrix(rows, n)))


def quotient(g: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, Matrix]:
    """``g / ideal`` on the coordinate complement of the ideal's pivots.

    Returns the quotient algebra and the projection matrix
    (``dim(quotient) x dim(g)``).
    """
    if not is_ideal(g, ideal):
        raise NotAnIdeal("quotient requires an ideal")
    comp = ideal.complement_coordinates()
    n = g.dim
    proj_rows = []
    for k in comp:
        row = []
        for j in range(n):
            x = Fraction(int(j == k))
            for v, p in zip(ideal.vectors, ideal.pivots):
                if p == j:
                    x -= v[k]
            row.append(x)
        proj_rows.append(row)
    proj = Matrix(proj_rows, n) if proj_rows else Matrix.zeros(0, n)
    m = len(comp)
    entries = []
    for a in range(m):
        for b in range(a + 1, m):
            img = proj @ g.structure(comp[a], comp[b])
            entries.extend((a, b, k, c) for k, c in enumerate(img) if c)
    names = [g.basis_names[k] for k in comp]
    return LieAlgebra(m, entries, names, check=False), proj
