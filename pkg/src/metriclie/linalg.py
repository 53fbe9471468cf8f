"""Exact rational matrices and the decompositions built on them.

Scalars are :class:`fractions.Fraction`.  Hot loops (row reduction,
characteristic polynomials, polynomial evaluation at a matrix) run on
integer matrices obtained by clearing denominators, which keeps Python's
big-int arithmetic in play instead of per-entry gcd normalisation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import poly
from .errors import ShapeError

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


class Matrix:
    """Immutable dense rational matrix, row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def diagonal(cls, diag: Sequence) -> "Matrix":
        d = vector(diag)
        n = len(d)
        z = Fraction(0)
        return cls._raw(tuple(tuple(d[i] if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = [vector(c) for c in columns]
        if not columns:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*columns))

    # -- access -----------------------------------------------------------
    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def data(self) -> tuple:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)) if self.rows else tuple(), self.rows) \
            if self.rows else Matrix.zeros(self.cols, 0)

    # -- arithmetic -------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def __mul__(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix._raw(tuple(tuple(a * c for a in r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            a, da = _int_matrix(self)
            b, db = _int_matrix(other)
            d = da * db
            prod = _int_matmul(a, b)
            if d == 1:
                out = tuple(tuple(Fraction(x) for x in r) for r in prod)
            else:
                out = tuple(tuple(Fraction(x, d) for x in r) for r in prod)
            return Matrix._raw(out, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ShapeError("vector length does not match matrix columns")
        return tuple(dot(r, v) for r in self._data)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square or k < 0:
            raise ShapeError("power needs a square matrix and k >= 0")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_symmetric(self) -> bool:
        return self.is_square and all(self._data[i][j] == self._data[j][i]
                                      for i in range(self.rows) for j in range(i))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        return Matrix._raw(tuple(a + b for a, b in zip(self._data, other._data)),
                           self.cols + other.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_fraction(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def to_json(self) -> list[list[str]]:
        return [[format_fraction(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, data, cols: int | None = None) -> "Matrix":
        return cls(data, cols)


# ---------------------------------------------------------------------------
# integer kernels
# ---------------------------------------------------------------------------

def _lcm_den(values: Iterable[Fraction]) -> int:
    d = 1
    for x in values:
        if x.denominator != 1:
            d = d * x.denominator // math.gcd(d, x.denominator)
    return d


def _scaled_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        d = _lcm_den(r)
        out.append([int(x * d) for x in r])
    return out


def _int_matrix(m: Matrix) -> tuple[list[list[int]], int]:
    """Return (M, d) with M integer and ``m == M / d``."""
    d = _lcm_den(x for r in m.data for x in r)
    return [[int(x * d) for x in r] for r in m.data], d


def _int_matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    out = []
    for r in a:
        nz = [(k, x) for k, x in enumerate(r) if x]
        out.append([sum(x * c[k] for k, x in nz) for c in bt])
    return out


def _fraction_free_rref(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination (Bareiss division step).

    After eliminating pivot ``k`` every entry is a ``k x k`` minor of the
    input, so the division by the previous pivot is exact.  Pivots are
    chosen with the smallest absolute value in their column.
    """
    m = len(rows)
    r = 0
    prev = 1
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if a:
                rows[i] = [(p * x - a * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                rows[i] = [(p * x) // prev for x in row]
        prev = p
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows, pivots = _fraction_free_rref(_scaled_int_rows(m.data), m.cols)
    out = []
    for i, c in enumerate(pivots):
        p = rows[i][c]
        out.append(tuple(Fraction(x, p) for x in rows[i]))
    z = (Fraction(0),) * m.cols
    out.extend(z for _ in range(m.rows - len(pivots)))
    return Matrix._raw(tuple(out), m.cols), pivots


def row_basis(vectors: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Canonical (rref) basis of the span of ``vectors``."""
    if not vectors:
        return []
    rows, pivots = _fraction_free_rref(_scaled_int_rows([vector(v) for v in vectors]), ncols)
    return [tuple(Fraction(x, rows[i][c]) for x in rows[i]) for i, c in enumerate(pivots)]


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def _nullspace_from_rref(rows: Sequence[Vector], pivots: list[int], ncols: int) -> list[Vector]:
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def nullspace(m: Matrix) -> list[Vector]:
    """Basis vectors of ``{v : m v = 0}``."""
    rows = row_basis(m.data, m.cols)
    pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
    return _nullspace_from_rref(rows, pivots, m.cols)


def kernel(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the kernel of ``m``."""
    basis = nullspace(m)
    if not basis:
        return Matrix.zeros(m.cols, 0)
    return Matrix.from_columns(basis)


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """A particular solution of ``a x = b`` with free variables set to zero."""
    b = vector(b)
    if len(b) != a.rows:
        raise ShapeError("right-hand side has wrong length")
    aug = Matrix._raw(tuple(r + (x,) for r, x in zip(a.data, b)), a.cols + 1)
    red, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for i, p in enumerate(pivots):
        x[p] = red[i, a.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    red, pivots = rref(m.hstack(Matrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


def determinant(m: Matrix) -> Fraction:
    if not m.is_square:
        raise ShapeError("determinant of a non-square matrix")
    chi = characteristic_polynomial(m)
    return chi[0] * (-1) ** m.rows if chi else Fraction(0)


# ---------------------------------------------------------------------------
# polynomials of matrices
# ---------------------------------------------------------------------------

def _int_charpoly(a: list[list[int]]) -> list[int]:
    """Faddeev-LeVerrier; integer input gives exact integer divisions."""
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    amk = [list(r) for r in a]
    for k in range(1, n + 1):
        if k > 1:
            # M_k = A M_{k-1} + c I, and A M_k is the next trace source
            for i in range(n):
                amk[i][i] += coeffs[n - k + 1]
            amk = _int_matmul(a, amk)
        coeffs[n - k] = -sum(amk[i][i] for i in range(n)) // k
    return coeffs


def characteristic_polynomial(m: Matrix) -> poly.Poly:
    """Monic ``det(xI - m)`` in ascending coefficient order."""
    if not m.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    a, d = _int_matrix(m)
    c = _int_charpoly(a)
    n = m.rows
    # chi_m(x) = d^{-n} chi_a(d x)
    return poly.make(Fraction(c[k] * d ** k, d ** n) for k in range(n + 1))


def evaluate_at(p: poly.Poly, m: Matrix) -> Matrix:
    """``p(m)`` computed with integer Horner steps."""
    if not m.is_square:
        raise ShapeError("polynomial of a non-square matrix")
    n = m.rows
    if not p:
        return Matrix.zeros(n)
    a, d = _int_matrix(m)
    # p(m) = sum c_k a^k d^{-k} = S(a) / D with S integer
    deg = len(p) - 1
    scaled = [c / Fraction(d) ** k for k, c in enumerate(p)]
    den = _lcm_den(scaled)
    s = [int(c * den) for c in scaled]
    acc = [[0] * n for _ in range(n)]
    for k in range(deg, -1, -1):
        acc = _int_matmul(acc, a) if k < deg else acc
        if s[k]:
            for i in range(n):
                acc[i][i] += s[k]
    return Matrix._raw(tuple(tuple(Fraction(x, den) for x in r) for r in acc), n)


def _local_minimal_polynomial(m: Matrix, v: Vector) -> poly.Poly:
    """Monic generator of ``{p : p(m) v = 0}`` via the Krylov sequence."""
    n = m.rows
    krylov = [v]
    while True:
        w = m @ krylov[-1]
        k = len(krylov)
        cols = Matrix.from_columns(krylov, n)
        sol = solve(cols, w)
        if sol is not None:
            return poly.make([-c for c in sol] + [1])
        krylov.append(w)
        if k > n:  # pragma: no cover - Cayley-Hamilton bound
            raise ArithmeticError("Krylov sequence failed to terminate")


def minimal_polynomial(m: Matrix) -> poly.Poly:
    """Monic least-degree polynomial annihilating ``m`` (ascending coefficients)."""
    if not m.is_square:
        raise ShapeError("minimal polynomial of a non-square matrix")
    mu = poly.ONE
    n = m.rows
    for i in range(n):
        e = tuple(Fraction(int(i == j)) for j in range(n))
        # skip basis vectors already annihilated by the current lcm
        if is_zero_vector(evaluate_at(mu, m) @ e):
            continue
        mu = poly.lcm(mu, _local_minimal_polynomial(m, e))
    return mu


@dataclass(frozen=True)
class JordanPair:
    """Additive Jordan-Chevalley decomposition ``m = semisimple + nilpotent``.

    ``p_poly`` and ``q_poly`` have zero constant term and satisfy
    ``p_poly(m) == semisimple`` and ``q_poly(m) == nilpotent``.
    """

    semisimple: Matrix
    nilpotent: Matrix
    p_poly: poly.Poly
    q_poly: poly.Poly


def semisimple_polynomial(m: Matrix) -> poly.Poly:
    """Polynomial ``P`` with ``P(0) = 0`` and ``P(m)`` the semisimple part of ``m``.

    Newton's iteration ``s <- s - f(s)/f'(s)`` on the squarefree part ``f``
    of the characteristic polynomial, carried out in Q[x]/(chi).
    """
    if not m.is_square:
        raise ShapeError("Jordan decomposition of a non-square matrix")
    chi = characteristic_polynomial(m)
    # chi = x^k g with g(0) != 0.  The semisimple part vanishes on the
    # generalized 0-eigenspace, so P = 0 mod x^k and P = Newton(g) mod g.
    k = next(i for i, c in enumerate(chi) if c)
    g = chi[k:]
    if len(g) == 1:
        return poly.ZERO
    s = _newton_semisimple(g)
    if k == 0:
        # chi(0) != 0 and chi(m) = 0, so shifting by chi fixes the constant term.
        c0 = s[0] if s else Fraction(0)
        return poly.sub(s, poly.scale(chi, c0 / chi[0])) if c0 else s
    xk = poly.make([0] * k + [1])
    return poly.mul(xk, poly.mod(poly.mul(s, poly.inverse_mod(xk, g)), g))


def _newton_semisimple(chi: poly.Poly) -> poly.Poly:
    """Root ``s`` of the squarefree part of ``chi`` in Q[x]/(chi) with ``s = x`` mod radical."""
    f = poly.squarefree_part(chi)
    if len(f) == len(chi):
        return poly.X if len(chi) > 2 else poly.mod(poly.X, chi)
    df = poly.derivative(f)
    s = poly.mod(poly.X, chi)
    while True:
        fs = poly.compose_mod(f, s, chi)
        if not fs:
            return s
        s = poly.mod(poly.sub(s, poly.mul(fs, poly.inverse_mod(poly.compose_mod(df, s, chi), chi))), chi)


def jordan_chevalley(m: Matrix) -> JordanPair:
    p = semisimple_polynomial(m)
    ss = evaluate_at(p, m)
    q = poly.sub(poly.X, p)
    return JordanPair(ss, m - ss, p, q)


def nilpotent_part(m: Matrix) -> Matrix:
    return jordan_chevalley(m).nilpotent


def is_nilpotent(m: Matrix) -> bool:
    chi = characteristic_polynomial(m)
    return all(c == 0 for c in chi[:-1])


def multiplicative_jordan(g: Matrix) -> tuple[Matrix, Matrix]:
    """``g = g_ss * g_u`` with ``g_u = I + g_ss^{-1} g_n`` unipotent."""
    jp = jordan_chevalley(g)
    g_ss = jp.semisimple
    g_u = Matrix.identity(g.rows) + inverse(g_ss) @ jp.nilpotent
    return g_ss, g_u


# ---------------------------------------------------------------------------
# symmetric forms
# ---------------------------------------------------------------------------

def _bitsize(x: Fraction) -> int:
    return (abs(x.numerator) * x.denominator).bit_length()


def congruence_diagonalize(g: Matrix) -> tuple[Matrix, list[Fraction]]:
    """Return ``(S, d)`` with ``S.T @ g @ S == diag(d)``.

    Symmetric Gaussian elimination; a zero diagonal with a nonzero
    off-diagonal entry is repaired by replacing ``e_k`` with ``e_k + e_j``.
    """
    if not g.is_square:
        raise ShapeError("congruence diagonalisation needs a square matrix")
    if not g.is_symmetric():
        raise ShapeError("congruence diagonalisation needs a symmetric matrix")
    n = g.rows
    a = g.tolist()
    s = Matrix.identity(n).tolist()

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in s:
            r[i], r[j] = r[j], r[i]

    def add_to(k, j, c):
        # e_k <- e_k + c e_j, applied as a congruence
        for t in range(n):
            a[k][t] += c * a[j][t]
        for t in range(n):
            a[t][k] += c * a[t][j]
        for r in s:
            r[k] += c * r[j]

    for k in range(n):
        cands = [j for j in range(k, n) if a[j][j]]
        if cands:
            j = min(cands, key=lambda t: (_bitsize(a[t][t]), t))
            if j != k:
                swap(k, j)
        else:
            j = next((t for t in range(k + 1, n) if a[k][t]), None)
            if j is None:
                continue
            add_to(k, j, Fraction(1))
        p = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                add_to(i, k, -a[i][k] / p)
    return Matrix(s), [a[i][i] for i in range(n)]


def sign_counts(d: Sequence[Fraction]) -> tuple[int, int, int]:
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0))
