"""Reduction of metric Lie algebras by totally isotropic central ideals.

For a totally isotropic central ideal ``j`` of a non-degenerate metric Lie
algebra, a Witt decomposition ``g = a + w + j`` identifies ``j^perp / j``
with ``w``.  Brackets then split as

    [X, Y] = [X, Y]_w + omega(X, Y)          X, Y in w
    [A, X] = Abar(X) + xi_A(X)               A in a, X in w

and, when the quotient form is invariant, ``<Abar X, Y> = <omega(X, Y), A>``.
Iterating over isotropic central lines ends in a definite abelian algebra.
Double extension is the inverse construction.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from sympy import factorint, symbols
from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

from . import lie
from .errors import (Abelian, AnisotropicOverQ, DegenerateForm, NonSolvable, NotAnIdeal,
                     NotCentral, NotDerivation, NotIsotropic, NotNilInvariant, NotSkew)
from .lie import LieAlgebra
from .linalg import (Matrix, Vector, congruence_diagonalize, format_fraction, inverse,
                     nullspace, vector)
from .metric import (MetricLieAlgebra, is_invariant, is_nondegenerate, is_skew,
                     is_totally_isotropic, j0, metric_radical, signature, witt_bases)
from .subspace import Subspace

ZERO = Fraction(0)
_SYMBOLS = symbols("x y z", integer=True)


def _lincomb(coeffs: Sequence, basis: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, basis):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] += c * x
    return tuple(out)


def _fmt_vec(v: Sequence) -> list[str]:
    return [format_fraction(x) for x in v]


@dataclass(frozen=True)
class ReductionStep:
    """One reduction ``g -> j^perp / j`` together with its Witt data.

    ``omega[p][q]`` holds the coordinates of ``omega(w_p, w_q)`` in the
    basis ``j_basis``; ``abar[i]`` is the matrix of ``Abar`` for ``a_basis[i]``
    on the quotient basis; ``xi[i]`` maps quotient coordinates to ``j``
    coordinates.  ``a_brackets[(i, k)]`` is ``[a_i, a_k]`` in ambient
    coordinates.
    """

    input: MetricLieAlgebra
    j_basis: tuple[Vector, ...]
    a_basis: tuple[Vector, ...]
    w_basis: tuple[Vector, ...]
    quotient: MetricLieAlgebra
    omega: tuple[tuple[Vector, ...], ...]
    abar: tuple[Matrix, ...]
    xi: tuple[Matrix, ...]
    a_brackets: dict = field(default_factory=dict)

    @property
    def j(self) -> Subspace:
        return Subspace(self.input.dim, self.j_basis)

    @property
    def a(self) -> Subspace:
        return Subspace(self.input.dim, self.a_basis)

    @property
    def w(self) -> Subspace:
        return Subspace(self.input.dim, self.w_basis)

    def omega_vector(self, p: int, q: int) -> Vector:
        """``omega(w_p, w_q)`` as an ambient vector."""
        return _lincomb(self.omega[p][q], self.j_basis, self.input.dim)

    def to_json(self) -> dict:
        return {
            "kind": "isotropic",
            "j": [_fmt_vec(v) for v in self.j_basis],
            "a": [_fmt_vec(v) for v in self.a_basis],
            "w": [_fmt_vec(v) for v in self.w_basis],
            "quotient": self.quotient.to_json(),
            "omega": [[_fmt_vec(c) for c in row] for row in self.omega],
            "abar": [m.to_json() for m in self.abar],
            "xi": [m.to_json() for m in self.xi],
        }


@dataclass(frozen=True)
class RadicalQuotient:
    """Passage from a degenerate invariant form to ``g / r`` with the induced form."""

    input: MetricLieAlgebra
    radical: Subspace
    quotient: MetricLieAlgebra
    projection: Matrix

    def to_json(self) -> dict:
        return {
            "kind": "radical",
            "radical": self.radical.to_json(),
            "quotient": self.quotient.to_json(),
            "projection": self.projection.to_json(),
        }


@dataclass(frozen=True)
class ReductionChain:
    input: MetricLieAlgebra
    radical_step: RadicalQuotient | None
    steps: tuple[ReductionStep, ...]
    terminal: MetricLieAlgebra

    @property
    def terminal_definiteness(self) -> str:
        plus, minus, null = signature(self.terminal)
        if self.terminal.dim == 0:
            return "zero"
        if minus == 0 and null == 0:
            return "positive"
        if plus == 0 and null == 0:
            return "negative"
        return "indefinite"  # pragma: no cover - a finished chain never ends here

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "radical_step": None if self.radical_step is None else self.radical_step.to_json(),
            "steps": [s.to_json() for s in self.steps],
            "terminal": self.terminal.to_json(),
            "summary": {
                "steps": len(self.steps),
                "terminal_dim": self.terminal.dim,
                "terminal_definiteness": self.terminal_definiteness,
            },
        }


# ---------------------------------------------------------------------------
# isotropic lines
# ---------------------------------------------------------------------------

def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _isotropic_in_plane(m: MetricLieAlgebra, u: Vector, v: Vector) -> Vector | None:
    """Nonzero rational ``s u + v`` with ``q = 0``, completing the square."""
    qu, qv, b = m.pair(u, u), m.pair(v, v), m.pair(u, v)
    if qu == 0:
        return u
    root = _rational_sqrt(b * b - qu * qv)
    if root is None:
        return None
    for s in ((-b + root) / qu, (-b - root) / qu):
        cand = tuple(s * x + y for x, y in zip(u, v))
        if any(cand):
            return cand
    return None


def find_isotropic_vector(m: MetricLieAlgebra, space: Subspace, reverse: bool = False) -> Vector:
    """A nonzero isotropic vector of ``space``.

    Tries the rref basis, then ``c u + v`` for ``c`` in ``-2..2``, then
    completes the square on each basis plane, also in a diagonalising basis.
    ``reverse`` scans the basis back to front, which gives a second,
    usually different, admissible choice.
    """
    basis = list(space.vectors)
    if reverse:
        basis.reverse()
    for u in basis:
        if m.pair(u, u) == 0:
            return u
    for u, v in combinations(basis, 2):
        for c in (-2, -1, 1, 2):
            cand = tuple(c * x + y for x, y in zip(u, v))
            if m.pair(cand, cand) == 0:
                return cand
    for u, v in combinations(basis, 2):
        hit = _isotropic_in_plane(m, u, v)
        if hit is not None:
            return hit
    if basis:
        restricted = Matrix([[m.pair(x, y) for y in basis] for x in basis])
        s, _ = congruence_diagonalize(restricted)
        diag = [_lincomb(col, basis, m.dim) for col in s.columns()]
        for u in diag:
            if m.pair(u, u) == 0:
                return u
        for u, v in combinations(diag, 2):
            hit = _isotropic_in_plane(m, u, v)
            if hit is not None:
                return hit
        hit = _isotropic_by_legendre(m, diag, fold=False)
        if hit is None:
            hit = _isotropic_by_search(m, basis)
        if hit is None:
            hit = _isotropic_by_legendre(m, diag, fold=True)
        if hit is not None:
            return hit
    raise AnisotropicOverQ("no rational isotropic vector found in the subspace")


def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = s^2 * r`` with ``r`` squarefree; returns ``(s, r)``."""
    s, r = 1, 1 if n > 0 else -1
    for prime, e in factorint(abs(n)).items():
        s *= prime ** (e // 2)
        if e % 2:
            r *= prime
    return s, r


def _legendre(a: Fraction, b: Fraction, c: Fraction) -> tuple[int, int, int] | None:
    """Nontrivial integer zero of ``a x^2 + b y^2 + c z^2``, or None if there is none.

    The solver needs squarefree pairwise coprime coefficients, so the form is
    normalised first while tracking the substitution ``x_i = X_i * f_i``.
    """
    if (a > 0) == (b > 0) == (c > 0):
        return None
    den = math.lcm(a.denominator, b.denominator, c.denominator)
    coef = [int(a * den), int(b * den), int(c * den)]
    g = math.gcd(*coef)
    coef = [t // g for t in coef]
    scale = [Fraction(1)] * 3
    for i in range(3):
        sq, coef[i] = _squarefree_split(coef[i])
        scale[i] /= sq
    changed = True
    while changed:
        changed = False
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            d = math.gcd(coef[i], coef[j])
            if d == 1:
                continue
            # d (a1 x^2 + b1 y^2) + c z^2 = 0  ->  a1 (dx)^2 + b1 (dy)^2 + dc z^2 = 0
            coef[i] //= d
            coef[j] //= d
            scale[i] /= d
            scale[j] /= d
            h = math.gcd(d, coef[k])
            coef[k] = (d // h) * (coef[k] // h)
            scale[k] /= h
            changed = True
    x, y, z = _SYMBOLS
    sol = diop_ternary_quadratic_normal(coef[0] * x**2 + coef[1] * y**2 + coef[2] * z**2)
    if sol[0] is None:
        return None
    vals = [int(t) * f for t, f in zip(sol, scale)]
    lcd = math.lcm(*(v.denominator for v in vals))
    out = tuple(int(v * lcd) for v in vals)
    # never trust the solver blindly
    if a * out[0] ** 2 + b * out[1] ** 2 + c * out[2] ** 2 or not any(out):
        return None
    return out


def _isotropic_by_search(m: MetricLieAlgebra, basis: list[Vector],
                         budget: int = 60000) -> Vector | None:
    """Exhaustive search over integer combinations of ``basis``, shell by shell."""
    k = len(basis)
    gram = [[m.pair(u, v) for v in basis] for u in basis]
    den = math.lcm(*(x.denominator for r in gram for x in r))
    s = [[int(x * den) for x in r] for r in gram]
    seen = 0
    bound = 1
    while seen < budget:
        rng_ = range(-bound, bound + 1)
        for c in product(rng_, repeat=k):
            if max(abs(t) for t in c) != bound:
                continue
            seen += 1
            if sum(c[i] * sum(s[i][j] * c[j] for j in range(k) if c[j]) for i in range(k) if c[i]) == 0:
                return _lincomb(c, basis, m.dim)
        if (2 * bound + 3) ** k > budget:
            break
        bound += 1
    return None


def _isotropic_by_legendre(m: MetricLieAlgebra, diag: list[Vector], fold: bool = True,
                           tries: int = 400) -> Vector | None:
    """Isotropic vector from an orthogonal basis via ternary Legendre equations.

    Extra directions are folded into the third coefficient as
    ``t = sum d_k c_k^2`` with small seeded integers ``c_k``.
    """
    n = m.dim
    q = [m.pair(u, u) for u in diag]
    idx = [i for i, d in enumerate(q) if d]
    if not any(q[i] > 0 for i in idx) or not any(q[i] < 0 for i in idx):
        return None
    for i, j, k in combinations(idx, 3):
        sol = _legendre(q[i], q[j], q[k])
        if sol is not None:
            return _lincomb(sol, [diag[i], diag[j], diag[k]], n)
    if len(idx) < 4 or not fold:
        return None
    rng = random.Random(0)
    pairs = [(i, j) for i, j in combinations(idx, 2)]
    for attempt in range(tries):
        i, j = rng.choice(pairs)
        rest = [k for k in idx if k not in (i, j)]
        bound = 3 + attempt // 25
        coeffs = [rng.randint(-bound, bound) for _ in rest]
        t = sum((q[k] * c * c for k, c in zip(rest, coeffs)), Fraction(0))
        if not t:
            continue
        sol = _legendre(q[i], q[j], t)
        if sol is None:
            continue
        tail = _lincomb(coeffs, [diag[k] for k in rest], n)
        return _lincomb([sol[0], sol[1], sol[2]], [diag[i], diag[j], tail], n)
    return None


def find_isotropic_central_line(m: MetricLieAlgebra, reverse: bool = False) -> Subspace:
    """A one-dimensional totally isotropic central ideal inside ``j0``."""
    g = m.algebra
    if not lie.is_solvable(g):
        raise NonSolvable("algebra is not solvable")
    if g.is_abelian():
        raise Abelian("abelian algebras have j0 = 0")
    if not is_nondegenerate(m):
        raise DegenerateForm("form is degenerate")
    if not is_invariant(m):
        raise NotNilInvariant("form is not invariant")
    space = j0(m) & lie.center(g)
    if space.is_zero():  # pragma: no cover - excluded by the preconditions
        space = lie.center(g)
    return Subspace(m.dim, [find_isotropic_vector(m, space, reverse)])


# ---------------------------------------------------------------------------
# one reduction step
# ---------------------------------------------------------------------------

def _basis_name(m: MetricLieAlgebra, v: Vector, fallback: str) -> str:
    nz = [i for i, x in enumerate(v) if x]
    if len(nz) == 1 and v[nz[0]] == 1:
        return m.algebra.basis_names[nz[0]]
    return fallback


def reduce_once(m: MetricLieAlgebra, j: Subspace) -> ReductionStep:
    n = m.dim
    g = m.algebra
    if not is_nondegenerate(m):
        raise DegenerateForm("reduction needs a non-degenerate form")
    if not j.issubspace(lie.center(g)):
        raise NotCentral("ideal is not central")
    if not is_totally_isotropic(m, j):
        raise NotIsotropic("ideal is not totally isotropic")
    a_basis, w_basis = witt_bases(m, j)
    j_basis = list(j.vectors)
    ka, kw, kj = len(a_basis), len(w_basis), len(j_basis)
    frame = Matrix.from_columns(a_basis + w_basis + j_basis)
    finv = inverse(frame)

    def split(v):
        c = finv @ v
        return c[:ka], c[ka:ka + kw], c[ka + kw:]

    omega = [[None] * kw for _ in range(kw)]
    entries = []
    for p in range(kw):
        omega[p][p] = (ZERO,) * kj
        for q in range(p + 1, kw):
            ca, cw, cj = split(g.bracket(w_basis[p], w_basis[q]))
            if any(ca):
                raise NotAnIdeal("j^perp is not an ideal for this form")
            entries.extend((p, q, k, c) for k, c in enumerate(cw) if c)
            omega[p][q] = cj
            omega[q][p] = tuple(-x for x in cj)
    names = [_basis_name(m, v, f"w{i}") for i, v in enumerate(w_basis)]
    if len(set(names)) != len(names):
        names = [f"w{i}" for i in range(kw)]
    qalg = LieAlgebra(kw, entries, names, check=False)
    qgram = Matrix([[m.pair(x, y) for y in w_basis] for x in w_basis], kw) if kw else Matrix.zeros(0)
    abar, xi = [], []
    for av in a_basis:
        wcols, jcols = [], []
        for wv in w_basis:
            ca, cw, cj = split(g.bracket(av, wv))
            if any(ca):
                raise NotAnIdeal("j^perp is not an ideal for this form")
            wcols.append(cw)
            jcols.append(cj)
        abar.append(Matrix.from_columns(wcols, kw) if kw else Matrix.zeros(0))
        xi.append(Matrix.from_columns(jcols, kj) if kw else Matrix.zeros(kj, 0))
    a_brackets = {(i, k): g.bracket(a_basis[i], a_basis[k]) for i, k in combinations(range(ka), 2)}
    return ReductionStep(
        input=m,
        j_basis=tuple(j_basis),
        a_basis=tuple(a_basis),
        w_basis=tuple(w_basis),
        quotient=MetricLieAlgebra.build(qalg, qgram),
        omega=tuple(tuple(row) for row in omega),
        abar=tuple(abar),
        xi=tuple(xi),
        a_brackets=a_brackets,
    )


def verify_cocycle_derivation_identity(step: ReductionStep) -> bool:
    """``<Abar X, Y> == <omega(X, Y), A>`` on all basis data."""
    q = step.quotient
    kw = q.dim
    for av, ab in zip(step.a_basis, step.abar):
        for p in range(kw):
            ax = ab.col(p)
            for r in range(kw):
                if q.pair(ax, q.algebra.unit(r)) != step.input.pair(step.omega_vector(p, r), av):
                    return False
    return True


def verify_xi_vanishes(step: ReductionStep) -> bool:
    return all(x.is_zero() for x in step.xi)


def omega_is_cocycle(step: ReductionStep) -> bool:
    """Antisymmetry and ``omega([x,y],z) + cyclic = 0`` (``j`` is a trivial module)."""
    q = step.quotient.algebra
    kw = q.dim
    kj = len(step.j_basis)

    def om(x, y):
        out = [ZERO] * kj
        for p, a in enumerate(x):
            if a:
                for r, b in enumerate(y):
                    if b:
                        for t, c in enumerate(step.omega[p][r]):
                            out[t] += a * b * c
        return out

    for p in range(kw):
        for r in range(kw):
            if any(a + b for a, b in zip(step.omega[p][r], step.omega[r][p])):
                return False
    for x, y, z in combinations(q.units(), 3):
        s = [a + b + c for a, b, c in zip(om(q.bracket(x, y), z), om(q.bracket(y, z), x),
                                          om(q.bracket(z, x), y))]
        if any(s):
            return False
    return True


def abar_are_derivations(step: ReductionStep) -> bool:
    return all(is_derivation(step.quotient.algebra, d) for d in step.abar)


def reconstruct_bracket(step: ReductionStep, x: Sequence, y: Sequence) -> Vector:
    """``[x, y]`` rebuilt from the quotient, omega, Abar, xi and ``[a, a]``."""
    n = step.input.dim
    ka, kw = len(step.a_basis), len(step.w_basis)
    frame = Matrix.from_columns(list(step.a_basis) + list(step.w_basis) + list(step.j_basis))
    finv = inverse(frame)
    cx, cy = finv @ vector(x), finv @ vector(y)
    xa, xw = cx[:ka], cx[ka:ka + kw]
    ya, yw = cy[:ka], cy[ka:ka + kw]
    q = step.quotient.algebra
    out = [ZERO] * n

    def add(v, c=Fraction(1)):
        for i, t in enumerate(v):
            if t:
                out[i] += c * t

    # w-w part
    add(_lincomb(q.bracket(xw, yw), step.w_basis, n))
    for p, s in enumerate(xw):
        if s:
            for r, t in enumerate(yw):
                if t:
                    add(step.omega_vector(p, r), s * t)
    # a-w parts
    for i in range(ka):
        for coef, other in ((xa[i], yw), (-ya[i], xw)):
            if coef:
                img_w = step.abar[i] @ other
                img_j = step.xi[i] @ other if len(step.j_basis) else ()
                add(_lincomb(img_w, step.w_basis, n), coef)
                add(_lincomb(img_j, step.j_basis, n), coef)
    # a-a part
    for (i, k), v in step.a_brackets.items():
        c = xa[i] * ya[k] - xa[k] * ya[i]
        if c:
            add(v, c)
    return tuple(out)


def reconstruction_matches(step: ReductionStep) -> bool:
    g = step.input.algebra
    units = g.units()
    return all(reconstruct_bracket(step, x, y) == g.bracket(x, y)
               for x, y in combinations(units, 2))


# ---------------------------------------------------------------------------
# complete reduction
# ---------------------------------------------------------------------------

def radical_quotient(m: MetricLieAlgebra) -> RadicalQuotient:
    r = metric_radical(m)
    qalg, proj = lie.quotient(m.algebra, r)
    comp = r.complement_coordinates()
    gram = m.gram.submatrix(comp, comp) if comp else Matrix.zeros(0)
    return RadicalQuotient(m, r, MetricLieAlgebra.build(qalg, gram), proj)


def _is_anisotropic_abelian(m: MetricLieAlgebra) -> bool:
    plus, minus, null = signature(m)
    return m.algebra.is_abelian() and null == 0 and (plus == 0 or minus == 0)


def default_line(m: MetricLieAlgebra) -> Subspace:
    if m.algebra.is_abelian():
        return Subspace(m.dim, [find_isotropic_vector(m, Subspace.full(m.dim))])
    return find_isotropic_central_line(m)


def alternate_line(m: MetricLieAlgebra) -> Subspace:
    """Same search as ``default_line`` with the candidate basis reversed."""
    if m.algebra.is_abelian():
        return Subspace(m.dim, [find_isotropic_vector(m, Subspace.full(m.dim), reverse=True)])
    return find_isotropic_central_line(m, reverse=True)


def complete_reduction(m: MetricLieAlgebra,
                       choose_line: Callable[[MetricLieAlgebra], Subspace] | None = None
                       ) -> ReductionChain:
    """Reduce by isotropic central lines until the algebra is abelian and definite.

    A degenerate form is first pushed to ``g / r``.  ``choose_line`` may
    override which central line is used at each step.
    """
    if not lie.is_solvable(m.algebra):
        raise NonSolvable("algebra is not solvable")
    if not is_invariant(m):
        raise NotNilInvariant("form is not invariant, hence not nil-invariant")
    choose_line = choose_line or default_line
    rq = None
    cur = m
    if not is_nondegenerate(cur):
        rq = radical_quotient(cur)
        cur = rq.quotient
    steps = []
    while not _is_anisotropic_abelian(cur):
        step = reduce_once(cur, choose_line(cur))
        steps.append(step)
        cur = step.quotient
    return ReductionChain(m, rq, tuple(steps), cur)


# ---------------------------------------------------------------------------
# double extension
# ---------------------------------------------------------------------------

def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    units = g.units()
    for x, y in combinations(units, 2):
        lhs = d @ g.bracket(x, y)
        rhs = tuple(a + b for a, b in zip(g.bracket(d @ x, y), g.bracket(x, d @ y)))
        if lhs != rhs:
            return False
    return True


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def double_extension(base: MetricLieAlgebra, d: Matrix) -> MetricLieAlgebra:
    """Attach a derivation line ``A`` and a dual central line ``Z`` to ``base``.

    Basis order is ``(A, base..., Z)``; ``[A, x] = d x``,
    ``[x, y] = [x, y]_base + <d x, y> Z`` and ``<A, Z> = 1``.
    """
    n = base.dim
    if d.shape != (n, n):
        raise NotDerivation("derivation has the wrong size")
    if not is_skew(base.gram, d):
        raise NotSkew("derivation is not skew for the base form")
    if not is_derivation(base.algebra, d):
        raise NotDerivation("matrix is not a derivation of the base algebra")
    entries = []
    for j in range(n):
        for k in range(n):
            if d[k, j]:
                entries.append((0, j + 1, k + 1, d[k, j]))
    gd = base.gram @ d
    for i, j, k, c in base.algebra.brackets():
        entries.append((i + 1, j + 1, k + 1, c))
    for i in range(n):
        for j in range(i + 1, n):
            c = gd[j, i]  # <d e_i, e_j>
            if c:
                entries.append((i + 1, j + 1, n + 1, c))
    taken = set(base.algebra.basis_names)
    an = _fresh_name("A", taken)
    zn = _fresh_name("Z", taken | {an})
    names = [an] + list(base.algebra.basis_names) + [zn]
    alg = LieAlgebra(n + 2, entries, names, check=False)
    gram = [[ZERO] * (n + 2) for _ in range(n + 2)]
    for i in range(n):
        for j in range(n):
            gram[i + 1][j + 1] = base.gram[i, j]
    gram[0][n + 1] = gram[n + 1][0] = Fraction(1)
    return MetricLieAlgebra.build(alg, Matrix(gram, n + 2))


def skew_derivation_space(m: MetricLieAlgebra) -> list[Matrix]:
    """Basis of derivations of ``m.algebra`` that are skew for ``m.gram``."""
    n = m.dim
    g = m.algebra
    units = g.units()
    rows = []
    # unknown d[k][j] at index k * n + j
    for x, y in combinations(range(n), 2):
        bxy = g.structure(x, y)
        for t in range(n):
            row = [ZERO] * (n * n)
            # (d [e_x, e_y])_t
            for k, c in enumerate(bxy):
                if c:
                    row[t * n + k] += c
            # -([d e_x, e_y] + [e_x, d e_y])_t
            for k in range(n):
                cy = g.structure(k, y)[t]
                if cy:
                    row[k * n + x] -= cy
                cx = g.structure(x, k)[t]
                if cx:
                    row[k * n + y] -= cx
            if any(row):
                rows.append(row)
    gram = m.gram
    for a in range(n):
        for b in range(a, n):
            # (G d + d^T G)[a][b] = sum_k G[a][k] d[k][b] + d[k][a] G[k][b]
            row = [ZERO] * (n * n)
            for k in range(n):
                if gram[a, k]:
                    row[k * n + b] += gram[a, k]
                if gram[k, b]:
                    row[k * n + a] += gram[k, b]
            if any(row):
                rows.append(row)
    if not rows:
        basis = [tuple(Fraction(int(i == t)) for i in range(n * n)) for t in range(n * n)]
    else:
        basis = nullspace(Matrix(rows, n * n))
    return [Matrix([v[k * n:(k + 1) * n] for k in range(n)], n) for v in basis]
