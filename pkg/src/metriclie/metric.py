"""Symmetric bilinear forms on Lie algebras.

Radicals, isotropy, Witt data, invariance and nil-invariance, and the
dichotomy for abelian modules carrying a skew pairing.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import lie
from .errors import (DegenerateForm, InvalidPairing, NotIsotropic, SchemaError, ShapeError)
from .lie import LieAlgebra, is_solvable, nilradical
from .linalg import (Matrix, Vector, congruence_diagonalize, dot, format_fraction,
                     jordan_chevalley, nullspace, rref, sign_counts, solve, vector)
from .subspace import Subspace


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix

    def __post_init__(self):
        if not self.gram.is_square:
            raise SchemaError("Gram matrix must be square")
        if not self.gram.is_symmetric():
            raise SchemaError("Gram matrix must be symmetric")

    @property
    def dim(self) -> int:
        return self.gram.rows

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.gram @ vector(y))


@dataclass(frozen=True)
class MetricLieAlgebra:
    algebra: LieAlgebra
    form: BilinearForm

    def __post_init__(self):
        if self.algebra.dim != self.form.dim:
            raise SchemaError("Gram size does not match algebra dimension")

    @classmethod
    def build(cls, algebra: LieAlgebra, gram) -> "MetricLieAlgebra":
        g = gram if isinstance(gram, Matrix) else Matrix(gram, algebra.dim)
        return cls(algebra, BilinearForm(g))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def gram(self) -> Matrix:
        return self.form.gram

    def pair(self, x: Sequence, y: Sequence) -> Fraction:
        return self.form(x, y)

    def to_json(self) -> dict:
        data = self.algebra.to_json()
        data["gram"] = self.gram.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> "MetricLieAlgebra":
        algebra = LieAlgebra.from_json(data)
        try:
            raw = data["gram"]
            gram = Matrix(raw, algebra.dim)
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"malformed gram matrix: {exc}") from exc
        if gram.rows != algebra.dim:
            raise SchemaError("Gram size does not match algebra dimension")
        return cls(algebra, BilinearForm(gram))


# ---------------------------------------------------------------------------
# radicals and isotropy
# ---------------------------------------------------------------------------

def metric_radical(m: MetricLieAlgebra) -> Subspace:
    return Subspace(m.dim, nullspace(m.gram))


def is_nondegenerate(m: MetricLieAlgebra) -> bool:
    return metric_radical(m).is_zero()


def orthogonal_complement(m: MetricLieAlgebra, s: Subspace) -> Subspace:
    if s.is_zero():
        return Subspace.full(m.dim)
    rows = [m.gram @ v for v in s.vectors]
    return Subspace(m.dim, nullspace(Matrix(rows, m.dim)))


def is_totally_isotropic(m: MetricLieAlgebra, s: Subspace) -> bool:
    return all(m.pair(u, v) == 0 for u in s.vectors for v in s.vectors)


def signature(m: MetricLieAlgebra) -> tuple[int, int, int]:
    """``(plus, minus, null)`` sign counts of a congruence diagonalisation."""
    return sign_counts(congruence_diagonalize(m.gram)[1])


def witt_index(m: MetricLieAlgebra) -> int:
    plus, minus, _ = signature(m)
    return min(plus, minus)


def witt_bases(m: MetricLieAlgebra, u: Subspace) -> tuple[list[Vector], list[Vector]]:
    """Explicit bases ``(a, w)`` of a Witt decomposition ``g = a + w + u``.

    ``w`` is a coordinate complement of ``u`` inside ``u^perp``: the standard
    kernel basis of ``x -> (<x, u_k>)_k`` minus the directions that ``u``
    itself occupies.  ``a`` then lives in the hyperbolic space ``w^perp``,
    is totally isotropic and pairs with ``u.vectors`` to the identity.
    Working from ``w`` keeps entries small over long reduction chains.
    """
    if not is_nondegenerate(m):
        raise DegenerateForm("Witt decomposition needs a non-degenerate form")
    if not is_totally_isotropic(m, u):
        raise NotIsotropic("subspace is not totally isotropic")
    n, k = m.dim, u.dim
    if k == 0:
        return [], list(Subspace.full(n).vectors)
    f = Matrix([m.gram @ v for v in u.vectors], n)
    kern = nullspace(f)  # one vector per free column, in column order
    pivots = set(rref(f)[1])
    free = [c for c in range(n) if c not in pivots]
    _, drop = rref(Matrix([[v[i] for i in free] for v in u.vectors], len(free)))
    w = [v for t, v in enumerate(kern) if t not in drop]
    hyper = orthogonal_complement(m, Subspace(n, w)).basis
    pairing = Matrix([m.gram @ v for v in u.vectors], n) @ hyper
    cs = []
    for i in range(k):
        y = solve(pairing, [int(i == t) for t in range(k)])
        if y is None:  # pragma: no cover - impossible when the form is non-degenerate
            raise DegenerateForm("isotropic subspace has no dual partner")
        cs.append(hyper @ y)
    half = Fraction(1, 2)
    a = []
    for i in range(k):
        v = list(cs[i])
        for t in range(k):
            coeff = half * m.pair(cs[i], cs[t])
            if coeff:
                for j, x in enumerate(u.vectors[t]):
                    v[j] -= coeff * x
        a.append(tuple(v))
    return a, w


def witt_decomposition(m: MetricLieAlgebra, u: Subspace) -> tuple[Subspace, Subspace]:
    a, w = witt_bases(m, u)
    return Subspace(m.dim, a), Subspace(m.dim, w)


# ---------------------------------------------------------------------------
# ideals tied to the form
# ---------------------------------------------------------------------------

def center_of_nilradical(g: LieAlgebra) -> Subspace:
    return lie.restricted_center(g, lie.nilradical(g))


def j0(m: MetricLieAlgebra | LieAlgebra) -> Subspace:
    """Characteristic ideal ``z(n) & [g, n]``; zero exactly for abelian ``g``."""
    g = m.algebra if isinstance(m, MetricLieAlgebra) else m
    n = lie.nilradical(g)
    zn = lie.restricted_center(g, n)
    return zn & lie.bracket_subspaces(g, Subspace.full(g.dim), n)


def reduced_core(m: MetricLieAlgebra) -> Subspace:
    """Largest ideal of ``g`` inside the metric radical."""
    g = m.algebra
    cur = metric_radical(m)
    while not cur.is_zero():
        ann = cur.annihilator().vectors
        if not ann:
            return cur
        rows = []
        for i in range(g.dim):
            a = g.ad_basis(i)
            images = [a @ v for v in cur.vectors]
            rows.extend([dot(w, img) for img in images] for w in ann)
        coeffs = nullspace(Matrix(rows, cur.dim))
        nxt = Subspace(g.dim, [tuple(sum((c * v[j] for c, v in zip(t, cur.vectors)), Fraction(0))
                                     for j in range(g.dim)) for t in coeffs])
        if nxt.dim == cur.dim:
            return cur
        cur = nxt
    return cur


def is_reduced(m: MetricLieAlgebra) -> bool:
    return reduced_core(m).is_zero()


# ---------------------------------------------------------------------------
# invariance
# ---------------------------------------------------------------------------

def skew_defect(gram: Matrix, t: Matrix) -> Matrix:
    """``G T + T^t G``; zero exactly when ``T`` is skew for the form."""
    gt = gram @ t
    return gt + gt.T


def is_skew(gram: Matrix, t: Matrix) -> bool:
    return skew_defect(gram, t).is_zero()


def invariance_defect(m: MetricLieAlgebra) -> Subspace:
    """``inv(g) = {X : ad(X) is skew}``, a linear subspace."""
    n = m.dim
    defects = [skew_defect(m.gram, m.algebra.ad_basis(i)) for i in range(n)]
    rows = [[d[j, k] for d in defects] for j in range(n) for k in range(j, n)]
    if not rows:
        return Subspace.full(n)
    return Subspace(n, nullspace(Matrix(rows, n)))


def is_invariant(m: MetricLieAlgebra) -> bool:
    return invariance_defect(m).is_full()


def invariance_witness(m: MetricLieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple with ``<[X,Y],Z> + <Y,[X,Z]> != 0``."""
    g = m.algebra
    n = m.dim
    for i in range(n):
        a = g.ad_basis(i)
        d = skew_defect(m.gram, a)
        for j in range(n):
            for k in range(n):
                # d[k, j] = <[e_i, e_j], e_k> + <e_j, [e_i, e_k]>
                if d[k, j]:
                    return (i, j, k)
    return None


@dataclass(frozen=True)
class NilInvarianceResult:
    """Outcome of the sampled nil-invariance test.

    ``nil_invariant`` is a proof of failure when False (``counterexample``
    is an ``X`` whose ``ad(X)_n`` is not skew) and evidence only when True.
    """

    nil_invariant: bool
    samples: int
    seed: int
    tested: int
    counterexample: Vector | None = None
    failing_pair: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "nil_invariant": self.nil_invariant,
            "samples": self.samples,
            "seed": self.seed,
            "tested": self.tested,
            "counterexample": None if self.counterexample is None
            else [format_fraction(x) for x in self.counterexample],
            "failing_pair": None if self.failing_pair is None else list(self.failing_pair),
        }


def nil_invariance_test_vectors(n: int, samples: int, seed: int, nil_basis=()) -> list[Vector]:
    """Test vectors for the nil-invariance sampler.

    Order: basis vectors, pairwise sums, then the same for ``nil_basis``, then
    ``samples`` seeded integer vectors with coefficients in [-9, 9]. When a
    nilradical basis is given every other random vector is drawn from its
    lattice, since for generic X the operator ad(X) is semisimple and tells us
    nothing.
    """
    one, zero = Fraction(1), Fraction(0)
    units = [tuple(one if i == j else zero for j in range(n)) for i in range(n)]
    nil = [tuple(v) for v in nil_basis]
    out = list(units)
    out.extend(tuple(a + b for a, b in zip(units[i], units[j])) for i, j in combinations(range(n), 2))
    out.extend(nil)
    out.extend(tuple(a + b for a, b in zip(nil[i], nil[j])) for i, j in combinations(range(len(nil)), 2))
    rng = random.Random(seed)
    for s in range(samples):
        if nil and s % 2:
            coeffs = [rng.randint(-9, 9) for _ in nil]
            out.append(tuple(sum((c * v[i] for c, v in zip(coeffs, nil)), zero) for i in range(n)))
        else:
            out.append(tuple(Fraction(rng.randint(-9, 9)) for _ in range(n)))
    return out


def nil_invariance_check(m: MetricLieAlgebra, samples: int = 64, seed: int = 0) -> NilInvarianceResult:
    g = m.algebra
    nil_basis = nilradical(g).basis.columns() if is_solvable(g) else ()
    tested = 0
    for x in nil_invariance_test_vectors(m.dim, samples, seed, nil_basis):
        tested += 1
        a = g.ad(x)
        if a.is_zero():
            continue
        d = skew_defect(m.gram, jordan_chevalley(a).nilpotent)
        if not d.is_zero():
            pair = next((j, k) for j in range(m.dim) for k in range(m.dim) if d[k, j])
            return NilInvarianceResult(False, samples, seed, tested, x, pair)
    return NilInvarianceResult(True, samples, seed, tested)


# ---------------------------------------------------------------------------
# abelian modules with a skew pairing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SkewPairingModule:
    """Abelian ``a`` acting on ``V`` by commuting ``rho[i]``, with a pairing ``V x a -> Q``.

    ``pairing[p][j] = <v_p, A_j>``.
    """

    abelian_dim: int
    module_dim: int
    rho: tuple[Matrix, ...]
    pairing: Matrix

    def __post_init__(self):
        if len(self.rho) != self.abelian_dim:
            raise ShapeError("need one operator per abelian generator")
        if any(r.shape != (self.module_dim, self.module_dim) for r in self.rho):
            raise ShapeError("module operators have the wrong size")
        if self.pairing.shape != (self.module_dim, self.abelian_dim):
            raise ShapeError("pairing has the wrong shape")

    def act(self, x: Sequence) -> Matrix:
        """``rho(X)`` for ``X = sum x_i A_i``."""
        out = Matrix.zeros(self.module_dim)
        for c, r in zip(x, self.rho):
            if c:
                out = out + r * c
        return out

    def radical(self) -> Subspace:
        """``{v : <v, a> = 0}``."""
        return Subspace(self.module_dim, nullspace(self.pairing.T))

    def skew_violation(self) -> tuple[int, int, int] | None:
        """First ``(i, j, p)`` with ``<rho(A_i) v_p, A_j> != -<rho(A_j) v_p, A_i>``."""
        prods = [r.T @ self.pairing for r in self.rho]
        for i in range(self.abelian_dim):
            for j in range(self.abelian_dim):
                for p in range(self.module_dim):
                    if prods[i][p, j] + prods[j][p, i]:
                        return (i, j, p)
        return None

    def commutes(self) -> bool:
        return all(a.commutator(b).is_zero() for a, b in combinations(self.rho, 2))


@dataclass(frozen=True)
class SkewPairingVerdict:
    nilpotent: bool
    witness: Subspace | None = None
    generator: Vector | None = None


def _column_space(m: Matrix) -> Subspace:
    return Subspace(m.rows, m.columns())


def _is_invariant_submodule(sp: SkewPairingModule, w: Subspace) -> bool:
    return all(w.contains(r @ v) for r in sp.rho for v in w.vectors)


def analyze_skew_pairing(sp: SkewPairingModule) -> SkewPairingVerdict:
    """Either every ``rho(A)`` is nilpotent or some ``rho(A)^2 V`` lies in the radical.

    A generator with nonzero ``W = rho(A)^2 V`` yields ``W`` as witness,
    checked to be a submodule inside the radical.  If every generator
    squares to zero the commuting generators are nilpotent, hence so is
    every ``rho(X)``.
    """
    if not sp.commutes():
        raise InvalidPairing("module operators do not commute")
    bad = sp.skew_violation()
    if bad is not None:
        raise InvalidPairing(f"skew condition fails at generators {bad[:2]}, module vector {bad[2]}")
    k = sp.abelian_dim
    one, zero = Fraction(1), Fraction(0)
    units = [tuple(one if i == j else zero for j in range(k)) for i in range(k)]
    radical = sp.radical()
    for x in units:
        r = sp.act(x)
        w = _column_space(r @ r)
        if w.is_zero():
            continue
        if not (w <= radical and _is_invariant_submodule(sp, w)):  # pragma: no cover
            raise ArithmeticError("witness failed verification; pairing data inconsistent")
        return SkewPairingVerdict(False, w, x)
    return SkewPairingVerdict(True)
