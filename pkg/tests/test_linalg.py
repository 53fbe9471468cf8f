import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from metriclie import poly
from metriclie.errors import ShapeError
from metriclie.linalg import (Matrix, characteristic_polynomial, congruence_diagonalize,
                              determinant, evaluate_at, inverse, is_nilpotent, jordan_chevalley,
                              minimal_polynomial, multiplicative_jordan, nullspace, rank, rref,
                              sign_counts, solve, to_fraction, format_fraction)

small = st.integers(-4, 4)


def matrices(n_max=5, square=True):
    def build(n, m, data):
        return Matrix([data[i * m:(i + 1) * m] for i in range(n)], m)
    if square:
        return st.integers(1, n_max).flatmap(
            lambda n: st.lists(small, min_size=n * n, max_size=n * n).map(lambda d: build(n, n, d)))
    return st.tuples(st.integers(1, n_max), st.integers(1, n_max)).flatmap(
        lambda nm: st.lists(small, min_size=nm[0] * nm[1], max_size=nm[0] * nm[1]).map(
            lambda d: build(nm[0], nm[1], d)))


def to_sympy(m: Matrix):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))


def from_sympy_poly(p) -> tuple:
    return poly.make([Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())])


# -- oracle comparisons -------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(matrices(square=False))
def test_rref_and_rank_match_sympy(m):
    r, piv = rref(m)
    sr, spiv = to_sympy(m).rref()
    assert list(piv) == list(spiv)
    assert to_sympy(r) == sr
    assert rank(m) == len(spiv)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_determinant_and_charpoly_match_sympy(m):
    s = to_sympy(m)
    assert determinant(m) == Fraction(int(s.det()))
    x = sympy.Symbol("x")
    assert characteristic_polynomial(m) == from_sympy_poly(s.charpoly(x))


@settings(max_examples=60, deadline=None)
@given(matrices(square=False))
def test_nullspace_is_kernel_of_full_dimension(m):
    ns = nullspace(m)
    assert len(ns) == m.cols - rank(m)
    assert all(not any(m @ v) for v in ns)


def test_inverse_and_solve():
    a = Matrix([[2, 1], [1, 1]])
    assert inverse(a) == Matrix([[1, -1], [-1, 2]])
    assert solve(a, (3, 2)) == (Fraction(1), Fraction(1))
    assert solve(Matrix([[1, 1], [1, 1]]), (1, 2)) is None


def test_fraction_text_round_trip():
    assert to_fraction("-3/6") == Fraction(-1, 2)
    assert format_fraction(Fraction(4, 2)) == "2"
    assert format_fraction(Fraction(-1, 3)) == "-1/3"


def test_ragged_rows_rejected():
    with pytest.raises(ShapeError):
        Matrix([[1, 2], [3]])


# -- Jordan-Chevalley -----------------------------------------------------------

def _check_jordan(a: Matrix):
    jp = jordan_chevalley(a)
    s, n = jp.semisimple, jp.nilpotent
    assert s + n == a
    assert (s @ n) == (n @ s)
    assert is_nilpotent(n)
    assert poly.is_squarefree(minimal_polynomial(s))
    assert evaluate_at(jp.p_poly, a) == s
    assert not jp.p_poly or jp.p_poly[0] == 0
    assert not jp.q_poly or jp.q_poly[0] == 0


def test_jordan_block_is_split_into_scalar_and_shift():
    a = Matrix([[2, 1], [0, 2]])
    jp = jordan_chevalley(a)
    assert jp.semisimple == Matrix([[2, 0], [0, 2]])
    assert jp.nilpotent == Matrix([[0, 1], [0, 0]])


def test_nilpotent_and_semisimple_inputs_are_fixed_points():
    nil = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert jordan_chevalley(nil).semisimple.is_zero()
    rot = Matrix([[0, -1], [1, 0]])  # irreducible over Q
    assert jordan_chevalley(rot).nilpotent.is_zero()
    _check_jordan(nil)
    _check_jordan(rot)


def test_irreducible_block_with_multiplicity():
    # companion of (x^2 + 1)^2: semisimple part is not diagonalizable over Q
    a = Matrix([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, -2], [0, 0, 1, 0]])
    _check_jordan(a)
    assert not jordan_chevalley(a).nilpotent.is_zero()


def test_sympy_oracle_on_rational_spectrum():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 5)
        p = sympy.Matrix(n, n, lambda i, j: rng.randint(-2, 2))
        if p.det() == 0:
            continue
        blocks = sympy.diag(*[sympy.Matrix([[rng.randint(-2, 2)]]) for _ in range(n)])
        for i in range(n - 1):
            if blocks[i, i] == blocks[i + 1, i + 1] and rng.random() < .5:
                blocks[i, i + 1] = 1
        a = p * blocks * p.inv()
        s_expected = p * sympy.diag(*[blocks[i, i] for i in range(n)]) * p.inv()
        m = Matrix([[Fraction(int(x.p), int(x.q)) for x in a.row(i)] for i in range(n)], n)
        assert to_sympy(jordan_chevalley(m).semisimple) == s_expected


@settings(max_examples=80, deadline=None)
@given(matrices(n_max=6))
def test_jordan_properties(a):
    _check_jordan(a)


def test_multiplicative_jordan():
    g = Matrix([[2, 1], [0, 2]])
    ss, u = multiplicative_jordan(g)
    assert ss @ u == g
    assert ss @ u == u @ ss
    assert is_nilpotent(u - Matrix.identity(2))


# -- congruence -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_congruence_diagonalization(m):
    sym = m + m.T
    p, d = congruence_diagonalize(sym)
    assert p.T @ sym @ p == Matrix.diagonal(d)
    assert determinant(p) != 0
    # all roots are real, so Descartes' rule counts them exactly
    x = sympy.Symbol("x")
    chi = to_sympy(sym).charpoly(x)
    zeros = next(i for i, c in enumerate(reversed(chi.all_coeffs())) if c)
    plus = _sign_changes(chi.all_coeffs())
    minus = _sign_changes(chi.as_expr().subs(x, -x).as_poly(x).all_coeffs())
    assert sign_counts(d) == (plus, minus, zeros)


def _sign_changes(coeffs):
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


@settings(max_examples=40, deadline=None)
@given(matrices(n_max=5), st.integers(0, 10 ** 6))
def test_signature_invariant_under_congruence(m, seed):
    rng = random.Random(seed)
    sym = m + m.T
    n = sym.rows
    while True:
        p = Matrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)], n)
        if determinant(p) != 0:
            break
    assert sign_counts(congruence_diagonalize(sym)[1]) == sign_counts(congruence_diagonalize(p.T @ sym @ p)[1])
