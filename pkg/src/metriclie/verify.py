"""Per-instance property checks behind ``metriclie verify``."""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import lie
from .catalog import random_skew_derivation
from .errors import MetricLieError
from .linalg import is_nilpotent, jordan_chevalley
from .metric import (MetricLieAlgebra, is_invariant, is_nondegenerate, j0, metric_radical,
                     nil_invariance_check, reduced_core, signature, skew_defect, witt_index)
from .reduction import (abar_are_derivations, alternate_line, complete_reduction,
                        double_extension, omega_is_cocycle, radical_quotient, reconstruction_matches,
                        reduce_once, verify_cocycle_derivation_identity, verify_xi_vanishes)
from .subspace import Subspace

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _verdict(name: str, failures: list[str], ok_detail: str = "") -> Check:
    if failures:
        return Check(name, FAIL, "; ".join(failures))
    return Check(name, PASS, ok_detail)


def counterexample_is_genuine(m: MetricLieAlgebra, x) -> bool:
    """Recompute ad(x)_n from scratch and confirm it is not skew."""
    return not skew_defect(m.gram, jordan_chevalley(m.algebra.ad(x)).nilpotent).is_zero()


def check_nil_invariance(m: MetricLieAlgebra, samples: int, seed: int) -> Check:
    inv = is_invariant(m)
    res = nil_invariance_check(m, samples, seed)
    fails = []
    if inv != res.nil_invariant:
        fails.append(f"is_invariant={inv} but sampler says {res.nil_invariant}")
    if res.counterexample is not None and not counterexample_is_genuine(m, res.counterexample):
        fails.append("returned counterexample does not violate skewness")
    return _verdict("nil_invariance_agreement", fails, f"invariant={inv}, tested={res.tested}")


def check_nilradical(m: MetricLieAlgebra) -> Check:
    g = m.algebra
    n = lie.nilradical(g)
    fails = []
    if not lie.is_ideal(g, n):
        fails.append("nilradical is not an ideal")
    if not lie.bracket_subspaces(g, Subspace.full(g.dim), Subspace.full(g.dim)) <= n:
        fails.append("derived algebra not inside nilradical")
    if any(not is_nilpotent(g.ad(v)) for v in n.vectors):
        fails.append("ad of a nilradical vector is not nilpotent")
    return _verdict("nilradical", fails, f"dim={n.dim}")


def _radical_lemmas(m: MetricLieAlgebra, fails: list[str], tag: str) -> None:
    g = m.algebra
    r = metric_radical(m)
    full = Subspace.full(g.dim)
    if not lie.bracket_subspaces(g, full, r) <= r:
        fails.append(f"{tag}: [g, r] not inside r")
    core = reduced_core(m)
    if not core <= r:
        fails.append(f"{tag}: reduced core not inside radical")
    if core.is_zero():
        if not r.is_zero():
            fails.append(f"{tag}: reduced but radical is nonzero")
        n = lie.nilradical(g)
        if lie.restricted_center(g, n) != lie.center(g):
            fails.append(f"{tag}: z(n) differs from z(g)")
        if j0(m).is_zero() != g.is_abelian():
            fails.append(f"{tag}: j0 = 0 does not match abelian")


def check_radical_lemmas(m: MetricLieAlgebra) -> Check:
    fails: list[str] = []
    _radical_lemmas(m, fails, "input")
    if not is_nondegenerate(m):
        _radical_lemmas(radical_quotient(m).quotient, fails, "g/r")
    return _verdict("radical_lemmas", fails)


def check_reduction(m: MetricLieAlgebra) -> tuple[Check, object]:
    chain = complete_reduction(m)
    plus, minus, null = signature(m)
    s = min(plus, minus)
    n = m.dim - null
    fails = []
    if len(chain.steps) > s:
        fails.append(f"{len(chain.steps)} steps exceed Witt index {s}")
    t = chain.terminal
    if not t.algebra.is_abelian():
        fails.append("terminal is not abelian")
    if chain.terminal_definiteness not in ("positive", "negative", "zero"):
        fails.append("terminal is not definite")
    if t.dim != n - 2 * s:
        fails.append(f"terminal dim {t.dim} != {n} - 2*{s}")
    for k, step in enumerate(chain.steps):
        src, dst = step.input, step.quotient
        jd = step.j.dim
        if dst.dim != src.dim - 2 * jd:
            fails.append(f"step {k}: dimension drop")
        if witt_index(dst) != witt_index(src) - jd:
            fails.append(f"step {k}: Witt index drop")
        if not verify_cocycle_derivation_identity(step):
            fails.append(f"step {k}: cocycle/derivation identity")
        if not verify_xi_vanishes(step):
            fails.append(f"step {k}: xi nonzero")
        if not omega_is_cocycle(step):
            fails.append(f"step {k}: omega not a cocycle")
        if not abar_are_derivations(step):
            fails.append(f"step {k}: Abar not derivations")
        if not reconstruction_matches(step):
            fails.append(f"step {k}: bracket reconstruction")
        if not is_invariant(dst):
            fails.append(f"step {k}: quotient not invariant")
    detail = f"steps={len(chain.steps)}, terminal_dim={t.dim}, {chain.terminal_definiteness}"
    return _verdict("reduction", fails, detail), chain


def check_terminal_uniqueness(m: MetricLieAlgebra, chain) -> Check:
    other = complete_reduction(m, alternate_line)
    a = (chain.terminal.dim, signature(chain.terminal))
    b = (other.terminal.dim, signature(other.terminal))
    fails = [] if a == b else [f"terminals differ: {a} vs {b}"]
    return _verdict("terminal_uniqueness", fails)


def check_round_trip(m: MetricLieAlgebra, seed: int) -> Check:
    d = random_skew_derivation(m, random.Random(seed))
    ext = double_extension(m, d)
    z = tuple(int(i == ext.dim - 1) for i in range(ext.dim))
    step = reduce_once(ext, Subspace(ext.dim, [z]))
    q = step.quotient
    fails = []
    if q.algebra.brackets() != m.algebra.brackets():
        fails.append("structure constants differ")
    if q.gram != m.gram:
        fails.append("Gram matrices differ")
    return _verdict("double_extension_round_trip", fails)


def run_checks(m: MetricLieAlgebra, samples: int = 64, seed: int = 0) -> list[Check]:
    """Every applicable check; structural errors inside a check count as failures."""
    out = [Check("jacobi", PASS, f"dim={m.dim}")]
    solvable = lie.is_solvable(m.algebra)

    def guarded(name, fn, *args):
        try:
            return fn(*args)
        except MetricLieError as exc:
            return Check(name, FAIL, f"{type(exc).__name__}: {exc}")

    if not solvable:
        for name in ("nil_invariance_agreement", "nilradical", "radical_lemmas", "reduction",
                     "terminal_uniqueness", "double_extension_round_trip"):
            out.append(Check(name, SKIP, "not solvable"))
        return out
    out.append(guarded("nil_invariance_agreement", check_nil_invariance, m, samples, seed))
    out.append(guarded("nilradical", check_nilradical, m))
    if not is_invariant(m):
        for name in ("radical_lemmas", "reduction", "terminal_uniqueness",
                     "double_extension_round_trip"):
            out.append(Check(name, SKIP, "form not invariant"))
        return out
    out.append(guarded("radical_lemmas", check_radical_lemmas, m))
    try:
        red, chain = check_reduction(m)
    except MetricLieError as exc:
        red, chain = Check("reduction", FAIL, f"{type(exc).__name__}: {exc}"), None
    out.append(red)
    if chain is None:
        out.append(Check("terminal_uniqueness", SKIP, "no chain"))
    else:
        out.append(guarded("terminal_uniqueness", check_terminal_uniqueness, m, chain))
    if is_nondegenerate(m):
        out.append(guarded("double_extension_round_trip", check_round_trip, m, seed))
    else:
        out.append(Check("double_extension_round_trip", SKIP, "degenerate form"))
    return out
