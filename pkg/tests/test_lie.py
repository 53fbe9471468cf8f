import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metriclie.catalog import heisenberg, oscillator, r2, random_invertible, random_solvable
from metriclie.errors import JacobiError, SchemaError
from metriclie.lie import (LieAlgebra, ad, center, derived_series, ideal_generated_by, is_ideal,
                           is_nilpotent, is_solvable, lower_central_series, nilradical, quotient,
                           restricted_center)
from metriclie.linalg import Matrix, is_nilpotent as mat_nilpotent, jordan_chevalley
from metriclie.subspace import Subspace

H3 = heisenberg(1).algebra
R2 = r2().algebra
OSC = oscillator(["1"]).algebra


def span(n, *vs):
    return Subspace(n, vs)


def test_ad_examples():
    assert ad(LieAlgebra.abelian(3), (1, 2, 3)).is_zero()
    assert ad(H3, (1, 0, 0)) == Matrix([[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    assert ad(R2, (1, 0)) == Matrix([[0, 0], [0, 1]])


def test_ad_represents_bracket():
    g = OSC
    rng = random.Random(1)
    for _ in range(20):
        x = tuple(rng.randint(-3, 3) for _ in range(4))
        y = tuple(rng.randint(-3, 3) for _ in range(4))
        assert ad(g, x) @ y == g.bracket(x, y)


def test_series_examples():
    ab = LieAlgebra.abelian(2)
    assert [s.dim for s in derived_series(ab)] == [2, 0]
    assert derived_series(H3) == [Subspace.full(3), span(3, (0, 0, 1)), Subspace.zero(3)]
    lcs = lower_central_series(R2)
    assert lcs[-1] == span(2, (0, 1))
    assert is_solvable(R2) and not is_nilpotent(R2)
    assert is_nilpotent(H3)


def test_center_examples():
    assert center(LieAlgebra.abelian(3)).is_full
    assert center(H3) == span(3, (0, 0, 1))
    assert center(OSC) == span(4, (0, 0, 0, 1))


def test_nilradical_examples():
    assert nilradical(H3).is_full
    assert nilradical(R2) == span(2, (0, 1))
    assert nilradical(OSC) == span(4, (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def test_sl2_is_not_solvable():
    # [h,e]=2e, [h,f]=-2f, [e,f]=h
    sl2 = LieAlgebra(3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], ["H", "E", "F"])
    assert not is_solvable(sl2)
    assert center(sl2).is_zero()


def test_jacobi_violation_detected():
    with pytest.raises(JacobiError):
        LieAlgebra(3, [(0, 1, 1, 1), (1, 2, 0, 1)])


def test_schema_errors():
    with pytest.raises(SchemaError):
        LieAlgebra.from_json({"dim": "3"})
    with pytest.raises(SchemaError):
        LieAlgebra.from_json({"dim": 2, "brackets": [{"i": 0, "j": 1, "k": 0}]})


def test_subspace_is_canonical():
    a = span(3, (1, 1, 0), (0, 1, 0))
    b = span(3, (1, 0, 0), (2, 5, 0))
    assert a == b and a.basis == b.basis


def test_quotient_by_center_of_h3_is_abelian():
    q, proj = quotient(H3, center(H3))
    assert q.dim == 2 and q.is_abelian()


def test_ideal_generated_and_restricted_center():
    x = span(4, (0, 1, 0, 0))
    assert ideal_generated_by(OSC, x) == nilradical(OSC)
    n = nilradical(OSC)
    assert restricted_center(OSC, n) == center(OSC)
    assert is_ideal(OSC, n)


# -- properties on random solvable algebras ------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2), st.integers(0, 2))
def test_nilradical_properties(seed, depth, base):
    g = random_solvable(depth, base, random.Random(seed)).algebra
    n = nilradical(g)
    assert is_ideal(g, n)
    assert derived_series(g)[1] <= n
    assert all(mat_nilpotent(g.ad(v)) for v in n.vectors)
    assert center(g) <= n


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_change_of_basis_preserves_jacobi_and_invariants(seed):
    rng = random.Random(seed)
    m = random_solvable(1, 2, rng)
    g = m.algebra
    p = random_invertible(g.dim, rng)
    h = g.change_basis(p)
    assert h.jacobi_violation() is None
    assert center(h).dim == center(g).dim
    assert nilradical(h).dim == nilradical(g).dim


def test_bracket_bilinear_and_antisymmetric():
    g = OSC
    x, y = (1, 2, 0, Fraction(1, 2)), (0, -1, 3, 1)
    assert g.bracket(x, y) == tuple(-c for c in g.bracket(y, x))
    assert not any(g.bracket(x, x))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_jordan_parts_preserve_ideals(seed):
    rng = random.Random(seed)
    g = random_solvable(rng.randint(1, 2), rng.randint(0, 2), rng).algebra
    x = tuple(rng.randint(-3, 3) for _ in range(g.dim))
    jp = jordan_chevalley(g.ad(x))
    for ideal in (nilradical(g), center(g), derived_series(g)[1]):
        for v in ideal.vectors:
            assert ideal.contains(jp.semisimple @ v) and ideal.contains(jp.nilpotent @ v)
