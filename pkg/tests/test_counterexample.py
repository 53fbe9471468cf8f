"""Independent audit, in sympy only, of the instance behind the red acceptance criterion 3.

The algebra is a 9-dimensional triple double extension of Euclidean R^3 with a
nondegenerate invariant form.  Its nilradical has a central element that is
not central in the whole algebra, so z(n) != z(g) even though the form is
invariant and the algebra is reduced.
"""
import json
from itertools import combinations, product

import sympy as sp

from conftest import DATA

RAW = json.loads((DATA / "zn_counterexample.json").read_text(encoding="utf-8"))
N = RAW["dim"]
GRAM = sp.Matrix(N, N, lambda i, j: sp.Rational(RAW["gram"][i][j]))

# structure constants C[i][j][k]: [e_i, e_j] = sum_k C e_k
C = [[[sp.Integer(0)] * N for _ in range(N)] for _ in range(N)]
for e in RAW["brackets"]:
    c = sp.Rational(e["c"])
    C[e["i"]][e["j"]][e["k"]] += c
    C[e["j"]][e["i"]][e["k"]] -= c


def br(x, y):
    return sp.Matrix([sum(x[i] * y[j] * C[i][j][k] for i in range(N) for j in range(N) if x[i] and y[j])
                      for k in range(N)])


def unit(i):
    return sp.Matrix([int(i == k) for k in range(N)])


def span_rank(vectors):
    return sp.Matrix.hstack(*vectors).rank() if vectors else 0


E = [unit(i) for i in range(N)]
# nilradical candidate: A1 - A and E1 .. Z2
NIL = [unit(1) - unit(2)] + [unit(i) for i in range(3, N)]
V = sp.Matrix([0, 1, -1, sp.Rational(-1, 14), sp.Rational(-29, 28), sp.Rational(31, 28), 0,
               sp.Rational(45, 28), 0])


def test_jacobi_and_invariance():
    for x, y, z in combinations(E, 3):
        assert br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)) == sp.zeros(N, 1)
    # <[e_i, e_j], e_k> + <e_j, [e_i, e_k]> = 0, entrywise
    g = [[GRAM[i, j] for j in range(N)] for i in range(N)]
    for i, j, k in product(range(N), repeat=3):
        lhs = sum(C[i][j][t] * g[t][k] for t in range(N))
        rhs = sum(g[j][t] * C[i][k][t] for t in range(N))
        assert lhs + rhs == 0
    assert GRAM.det() != 0


def test_candidate_is_a_nilpotent_ideal():
    base = span_rank(NIL)
    assert base == 7
    for x, y in product(E, NIL):
        assert span_rank(NIL + [br(x, y)]) == base
    # lower central series of the candidate reaches zero
    cur = NIL
    for _ in range(N):
        cur = [br(x, y) for x in NIL for y in cur]
        cur = [v for v in cur if v != sp.zeros(N, 1)]
        if not cur:
            break
    assert not cur


def test_candidate_is_maximal():
    # adjoint weights vanish on the nilradical, so the characteristic polynomial of
    # ad(a A2 + b A + y) does not depend on y in the candidate
    a, b, x = sp.symbols("a b x")
    elt = a * unit(0) + b * unit(2)
    ad = sp.Matrix.hstack(*[br(elt, e) for e in E])
    chi = sp.factor(ad.charpoly(x).as_expr())
    expected = x ** 5 * (-103 * a ** 2 + 3 * x ** 2) * (7 * a ** 2 + 56 * a * b + 112 * b ** 2 + 8 * x ** 2) / 24
    assert sp.expand(chi - expected) == 0
    # a != 0 gives eigenvalues +-a*sqrt(103/3); a = 0, b != 0 gives nonzero imaginary pairs


def test_center_of_nilradical_exceeds_center():
    assert span_rank(NIL + [V]) == 7
    assert all(br(V, y) == sp.zeros(N, 1) for y in NIL)
    assert br(V, unit(0)) != sp.zeros(N, 1)
