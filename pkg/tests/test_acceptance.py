"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line before asserting."""
import filecmp
import random
import time
from dataclasses import replace
from fractions import Fraction
from itertools import combinations, product
from math import lcm

import pytest

from metriclie import poly
from metriclie.catalog import (double_extension_chain, oscillator, perturb_gram,
                               random_skew_derivation, random_skew_pairing_module,
                               random_solvable)
from metriclie.cli import main
from metriclie.errors import JacobiError
from metriclie.io import load_instance
from metriclie.lie import (LieAlgebra, bracket_subspaces, center, ideal_generated_by, is_solvable,
                           nilradical, restricted_center)
from metriclie.linalg import (Matrix, evaluate_at, inverse, is_nilpotent, jordan_chevalley,
                              minimal_polynomial)
from metriclie.metric import (analyze_skew_pairing, is_invariant, is_nondegenerate, j0,
                              metric_radical, nil_invariance_check, reduced_core, signature,
                              witt_index)
from metriclie.reduction import (complete_reduction, double_extension, radical_quotient,
                                 reduce_once, verify_cocycle_derivation_identity,
                                 verify_xi_vanishes)
from metriclie.subspace import Subspace

from conftest import CORPUS, DATA, corpus_files


@pytest.fixture
def report(capsys):
    def emit(k: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return emit


def _corpus():
    return [(p.relative_to(CORPUS).as_posix(), load_instance(p)) for p in corpus_files()]


# 1 -------------------------------------------------------------------------------

def _jordan_inputs(rng):
    """Half plain integer matrices, half conjugated block forms with repeated spectrum."""
    out = []
    while len(out) < 200:
        n = rng.randint(1, 8)
        if len(out) % 2 == 0:
            out.append(Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], n))
            continue
        blocks = []
        size = 0
        while size < n:
            kind = rng.random()
            if kind < .3 and size + 4 <= n:
                # companion matrix of (x^2 + 1)^2: non-split semisimple part
                blocks.append([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, -2], [0, 0, 1, 0]])
                size += 4
            else:
                k = min(rng.randint(1, 3), n - size)
                lam = rng.randint(-2, 2)
                blocks.append([[lam if i == j else (1 if j == i + 1 else 0) for j in range(k)]
                               for i in range(k)])
                size += k
        b = [[0] * n for _ in range(n)]
        off = 0
        for blk in blocks:
            for i, row in enumerate(blk):
                for j, v in enumerate(row):
                    b[off + i][off + j] = v
            off += len(blk)
        while True:
            p = Matrix([[rng.randint(-1, 1) + (1 if i == j else 0) for j in range(n)] for i in range(n)], n)
            try:
                pinv = inverse(p)
                break
            except ZeroDivisionError:
                continue
        out.append(p @ Matrix(b, n) @ pinv)
    return out


def test_criterion_1_jordan_suite(report):
    mats = _jordan_inputs(random.Random(1))
    t0 = time.perf_counter()
    bad = []
    for a in mats:
        jp = jordan_chevalley(a)
        s, nil = jp.semisimple, jp.nilpotent
        nk = Matrix.identity(a.rows)
        for _ in range(a.rows):
            nk = nk @ nil
        ok = (s + nil == a and s @ nil == nil @ s and nk.is_zero()
              and poly.is_squarefree(minimal_polynomial(s))
              and evaluate_at(jp.p_poly, a) == s and (not jp.p_poly or jp.p_poly[0] == 0))
        if not ok:
            bad.append(a)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 5
    report(1, ok, f"{len(mats)} matrices, {len(bad)} failures, {elapsed:.2f}s")
    assert ok


# 2 -------------------------------------------------------------------------------

def _positives(rng, count):
    out = []
    while len(out) < count:
        if len(out) % 3 == 0:
            m = double_extension_chain(rng.randint(1, 2), rng)
        else:
            m = random_solvable(rng.randint(1, 2), rng.randint(0, 3), rng)
        out.append(m)
    return out


def _negatives(rng, count):
    """Perturbed Grams, redrawn until the perturbation actually breaks invariance."""
    out = []
    while len(out) < count:
        m = _positives(rng, 1)[0]
        if m.algebra.is_abelian():
            continue
        bad = perturb_gram(m, rng)
        while is_invariant(bad):
            bad = perturb_gram(m, rng)
        out.append(bad)
    return out


def _independent_skew_failure(m, x) -> bool:
    """Rebuild ad(x) from brackets and confirm its nilpotent Jordan part is not skew."""
    n = m.dim
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    ad = Matrix.from_columns([m.algebra.bracket(x, e) for e in units], n)
    jp = jordan_chevalley(ad)
    s, nil = jp.semisimple, jp.nilpotent
    # uniqueness of the decomposition makes these checks sufficient
    assert s + nil == ad and s @ nil == nil @ s and is_nilpotent(nil)
    assert poly.is_squarefree(minimal_polynomial(s))
    return any(m.pair(nil @ u, v) + m.pair(u, nil @ v) for u in units for v in units)


def test_criterion_2_nil_invariance_equivalence(report):
    rng = random.Random(2)
    positives = _positives(rng, 100)
    negatives = _negatives(rng, 100)
    instances = [m for _, m in _corpus()] + positives + negatives
    disagreements, fake = 0, 0
    counterexamples = 0
    for m in instances:
        if not is_solvable(m.algebra):
            continue
        res = nil_invariance_check(m, 64, 0)
        if res.nil_invariant != is_invariant(m):
            disagreements += 1
        if res.counterexample is not None:
            counterexamples += 1
            if not _independent_skew_failure(m, res.counterexample):
                fake += 1
    ok = disagreements == 0 and fake == 0
    report(2, ok, f"{len(instances)} instances, {disagreements} disagreements, "
                  f"{counterexamples} counterexamples, {fake} not genuine")
    assert ok


# 3 -------------------------------------------------------------------------------

def _lemma_failures(m):
    g = m.algebra
    fails = []
    r = metric_radical(m)
    if not bracket_subspaces(g, Subspace.full(g.dim), r) <= r:
        fails.append("[g,r] not in r")
    if not r.is_zero():
        fails.append("radical nonzero on reduced instance")
    if restricted_center(g, nilradical(g)) != center(g):
        fails.append("z(n) != z(g)")
    if j0(m).is_zero() != g.is_abelian():
        fails.append("j0 = 0 does not match abelian")
    return fails


def test_criterion_3_radical_lemmas(report):
    rng = random.Random(3)
    pool = [(name, m) for name, m in _corpus()]
    pool += [(f"random_solvable[{k}]", random_solvable(rng.randint(1, 3), rng.randint(0, 3), rng))
             for k in range(40)]
    pool.append(("zn_counterexample", load_instance(DATA / "zn_counterexample.json")))
    checked, failures = 0, []
    for name, m in pool:
        if not (is_solvable(m.algebra) and is_invariant(m)):
            continue
        if not is_nondegenerate(m):
            # the degenerate case: r is an ideal, and the lemmas apply to g/r
            r = metric_radical(m)
            if not bracket_subspaces(m.algebra, Subspace.full(m.dim), r) <= r:
                failures.append((name, "[g,r] not in r"))
            if not reduced_core(m) <= r:
                failures.append((name, "core outside radical"))
            m = radical_quotient(m).quotient
        if not reduced_core(m).is_zero():
            continue
        checked += 1
        failures += [(name, f) for f in _lemma_failures(m)]
    ok = not failures
    report(3, ok, f"{checked} reduced instances, failures: {failures or 'none'}")
    assert ok


# 4 -------------------------------------------------------------------------------

def test_criterion_4_terminal_dimension(report):
    bad = []
    count = 0
    for name, m in _corpus():
        if not (is_solvable(m.algebra) and is_invariant(m)):
            continue
        count += 1
        plus, minus, null = signature(m)
        s = witt_index(m)
        n = m.dim - null
        chain = complete_reduction(m)
        t = chain.terminal
        if not (len(chain.steps) <= s and t.algebra.is_abelian() and t.dim == n - 2 * s
                and chain.terminal_definiteness in ("positive", "zero")):
            bad.append(name)
    osc = oscillator(["1"])
    t0 = time.perf_counter()
    chain = complete_reduction(osc)
    ms = (time.perf_counter() - t0) * 1000
    osc_ok = (osc.dim, witt_index(osc), chain.terminal.dim, len(chain.steps)) == (4, 1, 2, 1) and ms < 100
    ok = not bad and osc_ok
    report(4, ok, f"{count} invariant corpus instances, bad: {bad or 'none'}; oscillator {ms:.1f}ms")
    assert ok


# 5 -------------------------------------------------------------------------------

def test_criterion_5_cocycle_derivation_identity(report):
    steps = 0
    bad = []
    mutations = 0
    for name, m in _corpus():
        if not (is_solvable(m.algebra) and is_invariant(m)):
            continue
        for k, step in enumerate(complete_reduction(m).steps):
            steps += 1
            if not (verify_cocycle_derivation_identity(step) and verify_xi_vanishes(step)):
                bad.append(f"{name}#{k}")
            hit = next(((p, q) for p in range(len(step.omega)) for q in range(len(step.omega))
                        if any(step.omega[p][q])), None)
            if hit is None:
                continue
            p, q = hit
            om = [list(row) for row in step.omega]
            om[p][q] = tuple(-c for c in om[p][q])
            mutated = replace(step, omega=tuple(tuple(row) for row in om))
            mutations += 1
            if verify_cocycle_derivation_identity(mutated):
                bad.append(f"{name}#{k} mutation undetected")
    ok = not bad and mutations > 0
    report(5, ok, f"{steps} steps, {mutations} mutations, bad: {bad or 'none'}")
    assert ok


# 6 -------------------------------------------------------------------------------

def test_criterion_6_double_extension_round_trip(report):
    rng = random.Random(6)
    bad = 0
    for k in range(50):
        kind = k % 3
        if kind == 0:
            base = double_extension_chain(rng.randint(0, 2), rng)
        elif kind == 1:
            base = random_solvable(rng.randint(0, 2), rng.randint(0, 3), rng)
        else:
            base = oscillator([str(rng.randint(1, 3))], extra=rng.randint(0, 2))
        d = random_skew_derivation(base, rng)
        ext = double_extension(base, d)
        z = Subspace(ext.dim, [tuple(int(i == ext.dim - 1) for i in range(ext.dim))])
        q = reduce_once(ext, z).quotient
        if q.algebra.brackets() != base.algebra.brackets() or q.gram != base.gram:
            bad += 1
    report(6, bad == 0, f"50 pairs, {bad} mismatches")
    assert bad == 0


# 7 -------------------------------------------------------------------------------

def _int_ad(g: LieAlgebra):
    """ad(e_i) scaled to a common integer denominator."""
    mats = [g.ad_basis(i) for i in range(g.dim)]
    den = lcm(1, *(x.denominator for m in mats for row in m.tolist() for x in row))
    return [[[int(x * den) for x in row] for row in m.tolist()] for m in mats]


def _int_nilpotent(m):
    n = len(m)
    p = m
    for _ in range(n - 1):
        p = [[sum(p[i][k] * m[k][j] for k in range(n) if p[i][k]) for j in range(n)] for i in range(n)]
    return not any(any(row) for row in p)


def _grid_nilradical(g: LieAlgebra, points):
    ads = _int_ad(g)
    n = g.dim
    hits = []
    for x in points:
        m = [[sum(c * a[i][j] for c, a in zip(x, ads) if c) for j in range(n)] for i in range(n)]
        if _int_nilpotent(m):
            hits.append(x)
    return ideal_generated_by(g, Subspace(n, hits)) if hits else Subspace.zero(n)


def _tables():
    yield LieAlgebra.abelian(1)
    for c in (-1, 0, 1):
        for d in (-1, 0, 1):
            yield LieAlgebra(2, [(0, 1, k, v) for k, v in enumerate((c, d)) if v])
    pairs = [(0, 1), (0, 2), (1, 2)]
    for coeffs in product((-1, 0, 1), repeat=9):
        entries = [(i, j, k, c) for t, (i, j) in enumerate(pairs)
                   for k, c in enumerate(coeffs[3 * t:3 * t + 3]) if c]
        try:
            yield LieAlgebra(3, entries)
        except JacobiError:
            continue


def test_criterion_7_nilradical_oracle(report):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for g in _tables():
        if not is_solvable(g):
            continue
        checked += 1
        grid = list(product(range(-2, 3), repeat=g.dim))
        if _grid_nilradical(g, grid) != nilradical(g):
            bad.append(g.brackets())
    small_time = time.perf_counter() - t0
    for name, m in _corpus():
        g = m.algebra
        if not is_solvable(g):
            continue
        checked += 1
        if g.dim <= 5:
            grid = list(product(range(-2, 3), repeat=g.dim))
        else:
            # grid points with at most two nonzero coordinates; their answer sits
            # between the full-grid answer and the nilradical, so equality is conclusive
            grid = [tuple(a if t == i else b if t == j else 0 for t in range(g.dim))
                    for i, j in combinations(range(g.dim), 2)
                    for a in range(-2, 3) for b in range(-2, 3)]
        if _grid_nilradical(g, grid) != nilradical(g):
            bad.append(name)
    ok = not bad and small_time < 10
    report(7, ok, f"{checked} solvable algebras, {len(bad)} mismatches, "
                  f"dim<=3 enumeration {small_time:.2f}s")
    assert ok


# 8 -------------------------------------------------------------------------------

def test_criterion_8_skew_pairing(report):
    rng = random.Random(8)
    nil, wit, bad = 0, 0, 0
    for _ in range(100):
        sp = random_skew_pairing_module(rng)
        v = analyze_skew_pairing(sp)
        if v.nilpotent:
            nil += 1
            for _ in range(64):
                x = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(sp.abelian_dim)]
                r = sp.act(x)
                p = Matrix.identity(sp.module_dim)
                for _ in range(sp.module_dim):
                    p = p @ r
                if not p.is_zero():
                    bad += 1
                    break
        else:
            wit += 1
            w = v.witness
            invariant = all(w.contains(r @ u) for r in sp.rho for u in w.vectors)
            if w.is_zero() or not invariant or not w <= sp.radical():
                bad += 1
    ok = bad == 0 and nil > 0 and wit > 0
    report(8, ok, f"100 modules, {nil} nilpotent, {wit} with witness, {bad} bad")
    assert ok


# 9 -------------------------------------------------------------------------------

def _tree(root):
    return sorted(p.relative_to(root).as_posix() for p in root.rglob("*") if p.is_file())


def test_criterion_9_cli_determinism(report, tmp_path, capsys):
    for run in ("a", "b"):
        assert main(["generate", "--corpus", str(tmp_path / run / "corpus")]) == 0
        assert main(["verify", "--corpus", str(tmp_path / run / "corpus"), "--json",
                     "--out", str(tmp_path / run / "verify.json")]) == 0
    capsys.readouterr()
    a, b = tmp_path / "a", tmp_path / "b"
    diffs = [f for f in _tree(a) if not filecmp.cmp(a / f, b / f, shallow=False)]
    same_files = _tree(a) == _tree(b)
    golden = [f for f in _tree(CORPUS) if not filecmp.cmp(CORPUS / f, a / "corpus" / f, shallow=False)]
    golden_files = _tree(CORPUS) == _tree(a / "corpus")
    ok = same_files and not diffs and golden_files and not golden
    report(9, ok, f"{len(_tree(a))} files per run, {len(diffs)} run diffs, {len(golden)} golden diffs")
    assert ok
