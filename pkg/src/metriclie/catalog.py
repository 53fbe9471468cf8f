"""Named and seeded random metric Lie algebras, plus the shipped corpus manifest."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import InvalidParams
from .lie import LieAlgebra
from .linalg import Matrix, format_fraction, nullspace, rank, to_fraction
from .metric import MetricLieAlgebra, SkewPairingModule
from .reduction import double_extension, skew_derivation_space

FAMILIES = ("abelian", "heisenberg", "oscillator", "r2", "double_extension_chain", "random_solvable")

# positional CLI arguments map onto these keys, in order
POSITIONAL = {
    "abelian": ("dim", "minus"),
    "heisenberg": ("n", "gram"),
    "oscillator": ("freqs", "extra"),
    "r2": (),
    "double_extension_chain": ("depth",),
    "random_solvable": ("depth", "base"),
}

DEFAULTS: dict[str, dict[str, Any]] = {
    "abelian": {"dim": 2, "minus": 0},
    "heisenberg": {"n": 1, "gram": "identity"},
    "oscillator": {"freqs": ["1"], "extra": 0},
    "r2": {},
    "double_extension_chain": {"depth": 1},
    "random_solvable": {"depth": 1, "base": 2},
}


def _as_int(value, name: str, lo: int, hi: int) -> int:
    try:
        if isinstance(value, bool):
            raise TypeError
        v = int(value)
        if isinstance(value, (float, Fraction)) and v != value:
            raise ValueError
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be an integer") from None
    if not lo <= v <= hi:
        raise InvalidParams(f"{name} must lie in [{lo}, {hi}]")
    return v


def _as_freqs(value) -> list[str]:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    if not isinstance(value, (list, tuple)) or not value:
        raise InvalidParams("freqs must be a non-empty list of positive rationals")
    out = []
    for v in value:
        try:
            f = to_fraction(v)
        except (TypeError, ValueError, ZeroDivisionError):
            raise InvalidParams(f"bad frequency {v!r}") from None
        if f <= 0:
            raise InvalidParams("frequencies must be positive")
        out.append(format_fraction(f))
    return out


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def normalized(self) -> "FamilySpec":
        """Validate, fill defaults and put parameters in canonical form."""
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}")
        unknown = set(self.params) - set(DEFAULTS[self.family])
        if unknown:
            raise InvalidParams(f"unknown parameters for {self.family}: {sorted(unknown)}")
        p = dict(DEFAULTS[self.family])
        p.update(self.params)
        f = self.family
        if f == "abelian":
            p["dim"] = _as_int(p["dim"], "dim", 0, 12)
            p["minus"] = _as_int(p["minus"], "minus", 0, p["dim"])
        elif f == "heisenberg":
            p["n"] = _as_int(p["n"], "n", 1, 5)
            if p["gram"] not in ("identity", "degenerate"):
                raise InvalidParams("heisenberg gram must be 'identity' or 'degenerate'")
        elif f == "oscillator":
            p["freqs"] = _as_freqs(p["freqs"])
            p["extra"] = _as_int(p["extra"], "extra", 0, 6)
            if 2 * len(p["freqs"]) + 2 + p["extra"] > 12:
                raise InvalidParams("oscillator dimension exceeds 12")
        elif f == "double_extension_chain":
            p["depth"] = _as_int(p["depth"], "depth", 0, 5)
        elif f == "random_solvable":
            p["depth"] = _as_int(p["depth"], "depth", 0, 5)
            p["base"] = _as_int(p["base"], "base", 0, 4)
        seed = _as_int(self.seed, "seed", 0, 2 ** 63)
        return FamilySpec(f, p, seed)

    def to_json(self) -> dict:
        return {"family": self.family, "params": self.params, "seed": self.seed}


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def abelian(dim: int, minus: int = 0) -> MetricLieAlgebra:
    signs = [1] * (dim - minus) + [-1] * minus
    return MetricLieAlgebra.build(LieAlgebra.abelian(dim, [f"E{i + 1}" for i in range(dim)]),
                                  Matrix.diagonal(signs))


def heisenberg(n: int, gram: str = "identity") -> MetricLieAlgebra:
    """``h_{2n+1}`` with ``[X_i, Y_i] = Z``."""
    dim = 2 * n + 1
    if n == 1:
        names = ["X", "Y", "Z"]
    else:
        names = [f"{c}{i + 1}" for i in range(n) for c in "XY"] + ["Z"]
    entries = [(2 * i, 2 * i + 1, dim - 1, 1) for i in range(n)]
    diag = [1] * dim
    if gram == "degenerate":
        diag[-1] = 0
    return MetricLieAlgebra.build(LieAlgebra(dim, entries, names), Matrix.diagonal(diag))


def oscillator(freqs, extra: int = 0) -> MetricLieAlgebra:
    """Double extension of Euclidean ``R^{2k}`` by rotations with the given frequencies."""
    freqs = [to_fraction(f) for f in freqs]
    k = len(freqs)
    names = ["X", "Y"] if k == 1 else [f"{c}{i + 1}" for i in range(k) for c in "XY"]
    base = MetricLieAlgebra.build(LieAlgebra.abelian(2 * k, names), Matrix.identity(2 * k))
    d = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for i, lam in enumerate(freqs):
        d[2 * i + 1][2 * i] = lam
        d[2 * i][2 * i + 1] = -lam
    m = double_extension(base, Matrix(d))
    if extra:
        m = direct_sum(m, abelian(extra))
    return m


def r2() -> MetricLieAlgebra:
    """Non-abelian 2-dimensional algebra ``[A, X] = X`` with the identity Gram matrix."""
    return MetricLieAlgebra.build(LieAlgebra(2, [(0, 1, 1, 1)], ["A", "X"]), Matrix.identity(2))


def direct_sum(m1: MetricLieAlgebra, m2: MetricLieAlgebra) -> MetricLieAlgebra:
    n1, n2 = m1.dim, m2.dim
    gram = [[Fraction(0)] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = m1.gram[i, j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = m2.gram[i, j]
    return MetricLieAlgebra.build(m1.algebra.direct_sum(m2.algebra), Matrix(gram, n1 + n2))


def random_skew_derivation(m: MetricLieAlgebra, rng: random.Random, spread: int = 3,
                           tries: int = 8) -> Matrix:
    """Random integer combination of a basis of skew derivations (nonzero when possible)."""
    basis = skew_derivation_space(m)
    n = m.dim
    if not basis:
        return Matrix.zeros(n)
    for _ in range(tries):
        d = Matrix.zeros(n)
        for b in basis:
            c = rng.randint(-spread, spread)
            if c:
                d = d + b * c
        if not d.is_zero():
            return d
    return basis[0]


def double_extension_chain(depth: int, rng: random.Random, base: MetricLieAlgebra | None = None
                           ) -> MetricLieAlgebra:
    cur = base if base is not None else MetricLieAlgebra.build(
        LieAlgebra.abelian(2, ["X", "Y"]), Matrix.identity(2))
    for _ in range(depth):
        cur = double_extension(cur, random_skew_derivation(cur, rng))
    return cur


def random_invertible(n: int, rng: random.Random, spread: int = 2) -> Matrix:
    while True:
        p = Matrix([[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)], n)
        if rank(p) == n:
            return p


def change_basis(m: MetricLieAlgebra, p: Matrix, names=None) -> MetricLieAlgebra:
    names = names or [f"e{i}" for i in range(m.dim)]
    return MetricLieAlgebra.build(m.algebra.change_basis(p, names), p.T @ m.gram @ p)


def random_solvable(depth: int, base: int, rng: random.Random) -> MetricLieAlgebra:
    """Iterated double extension of Euclidean ``R^base``, then a random change of basis."""
    b = MetricLieAlgebra.build(LieAlgebra.abelian(base, [f"E{i + 1}" for i in range(base)]),
                               Matrix.identity(base))
    m = double_extension_chain(depth, rng, b)
    if m.dim == 0:
        return m
    return change_basis(m, random_invertible(m.dim, rng))


def generate(spec: FamilySpec) -> MetricLieAlgebra:
    spec = spec.normalized()
    p = spec.params
    rng = random.Random(spec.seed)
    f = spec.family
    if f == "abelian":
        return abelian(p["dim"], p["minus"])
    if f == "heisenberg":
        return heisenberg(p["n"], p["gram"])
    if f == "oscillator":
        return oscillator(p["freqs"], p["extra"])
    if f == "r2":
        return r2()
    if f == "double_extension_chain":
        return double_extension_chain(p["depth"], rng)
    return random_solvable(p["depth"], p["base"], rng)


# ---------------------------------------------------------------------------
# invariant forms and perturbations
# ---------------------------------------------------------------------------

def solve_invariant_forms(g: LieAlgebra) -> list[Matrix]:
    """Basis of symmetric ``S`` with ``S ad(e_i) + ad(e_i)^T S = 0`` for every ``i``."""
    n = g.dim
    index = {}
    for a in range(n):
        for b in range(a, n):
            index[(a, b)] = len(index)

    def var(a, b):
        return index[(a, b) if a <= b else (b, a)]

    nvars = len(index)
    rows = []
    for i in range(n):
        ad = g.ad_basis(i)
        if ad.is_zero():
            continue
        for j in range(n):
            for k in range(j, n):
                row = [Fraction(0)] * nvars
                for t in range(n):
                    if ad[t, k]:
                        row[var(j, t)] += ad[t, k]
                    if ad[t, j]:
                        row[var(t, k)] += ad[t, j]
                if any(row):
                    rows.append(row)
    if rows:
        sols = nullspace(Matrix(rows, nvars))
    else:
        sols = [tuple(Fraction(int(t == s)) for t in range(nvars)) for s in range(nvars)]
    out = []
    for v in sols:
        out.append(Matrix([[v[var(a, b)] for b in range(n)] for a in range(n)], n))
    return out


def random_invariant_form(g: LieAlgebra, rng: random.Random, spread: int = 3) -> Matrix:
    out = Matrix.zeros(g.dim)
    for s in solve_invariant_forms(g):
        c = rng.randint(-spread, spread)
        if c:
            out = out + s * c
    return out


def perturb_gram(m: MetricLieAlgebra, rng: random.Random, spread: int = 3) -> MetricLieAlgebra:
    """Add a random nonzero integer to one symmetric pair of Gram entries."""
    n = m.dim
    i, j = rng.randrange(n), rng.randrange(n)
    delta = 0
    while delta == 0:
        delta = rng.randint(-spread, spread)
    rows = m.gram.tolist()
    rows[i][j] += delta
    if i != j:
        rows[j][i] += delta
    return MetricLieAlgebra.build(m.algebra, Matrix(rows, n))


def random_skew_pairing_module(rng: random.Random, max_abelian: int = 3,
                               max_module: int = 4) -> SkewPairingModule:
    """Commuting operators (polynomials in one random matrix) with a random skew pairing."""
    k = rng.randint(1, max_abelian)
    m = rng.randint(1, max_module)
    kind = rng.choice(("nilpotent", "general", "diagonal"))
    if kind == "nilpotent":
        base = Matrix([[rng.randint(-2, 2) if c > r else 0 for c in range(m)] for r in range(m)], m)
    elif kind == "diagonal":
        base = Matrix.diagonal([rng.choice((0, 0, 1, -1, 2)) for _ in range(m)])
    else:
        base = Matrix([[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)], m)
    rho = []
    for _ in range(k):
        acc = Matrix.zeros(m)
        power = base
        for _ in range(rng.randint(1, 2)):
            c = rng.randint(-2, 2)
            if c:
                acc = acc + power * c
            power = power @ base
        rho.append(acc)
    # pairing entries P[p][j]; skew: (rho_i^T P)[p][j] + (rho_j^T P)[p][i] = 0
    nvars = m * k
    rows = []
    for i in range(k):
        for j in range(i, k):
            for p in range(m):
                row = [Fraction(0)] * nvars
                for q in range(m):
                    if rho[i][q, p]:
                        row[q * k + j] += rho[i][q, p]
                    if rho[j][q, p]:
                        row[q * k + i] += rho[j][q, p]
                if any(row):
                    rows.append(row)
    sols = nullspace(Matrix(rows, nvars)) if rows else [
        tuple(Fraction(int(t == s)) for t in range(nvars)) for s in range(nvars)]
    vec = [Fraction(0)] * nvars
    for s in sols:
        c = rng.randint(-3, 3)
        for t, x in enumerate(s):
            vec[t] += c * x
    pairing = Matrix([[vec[q * k + j] for j in range(k)] for q in range(m)], k)
    return SkewPairingModule(k, m, tuple(rho), pairing)


# ---------------------------------------------------------------------------
# shipped corpus
# ---------------------------------------------------------------------------

CORPUS: tuple[tuple[str, FamilySpec], ...] = (
    ("abelian2", FamilySpec("abelian", {"dim": 2})),
    ("abelian3", FamilySpec("abelian", {"dim": 3})),
    ("abelian4_lorentz", FamilySpec("abelian", {"dim": 4, "minus": 1})),
    ("h3_identity", FamilySpec("heisenberg", {"n": 1, "gram": "identity"})),
    ("h3_degenerate", FamilySpec("heisenberg", {"n": 1, "gram": "degenerate"})),
    ("h5_degenerate", FamilySpec("heisenberg", {"n": 2, "gram": "degenerate"})),
    ("osc1", FamilySpec("oscillator", {"freqs": ["1"]})),
    ("osc1_R1", FamilySpec("oscillator", {"freqs": ["1"], "extra": 1})),
    ("osc1_R2", FamilySpec("oscillator", {"freqs": ["1"], "extra": 2})),
    ("osc_1_2", FamilySpec("oscillator", {"freqs": ["1", "2"]})),
    ("osc_1o2_3", FamilySpec("oscillator", {"freqs": ["1/2", "3"]})),
    ("r2", FamilySpec("r2", {})),
    ("dec_d1_s3", FamilySpec("double_extension_chain", {"depth": 1}, 3)),
    ("dec_d2_s7", FamilySpec("double_extension_chain", {"depth": 2}, 7)),
    ("dec_d3_s5", FamilySpec("double_extension_chain", {"depth": 3}, 5)),
    ("rs_d1_b2_s1", FamilySpec("random_solvable", {"depth": 1, "base": 2}, 1)),
    ("rs_d2_b1_s4", FamilySpec("random_solvable", {"depth": 2, "base": 1}, 4)),
    ("rs_d2_b3_s9", FamilySpec("random_solvable", {"depth": 2, "base": 3}, 9)),
)


def corpus_path(name: str, spec: FamilySpec) -> str:
    return f"{spec.family}/{name}.json"
