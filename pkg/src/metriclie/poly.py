"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of :class:`~fractions.Fraction` coefficients in
ascending degree order, ``(c0, c1, ..., cd)``, with no trailing zeros.  The
zero polynomial is the empty tuple.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def make(coeffs: Iterable) -> Poly:
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def lead(p: Poly) -> Fraction:
    return p[-1] if p else Fraction(0)


def monic(p: Poly) -> Poly:
    if not p:
        return p
    lc = p[-1]
    return tuple(c / lc for c in p)


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return make((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    return make(a * c for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return make(out)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lq = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        c = r[-1] / lq
        shift = len(r) - 1 - dq
        quot[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return make(quot), make(r)


def mod(p: Poly, q: Poly) -> Poly:
    return divmod_(p, q)[1]


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while q:
        p, q = q, mod(p, q)
    return monic(p)


def lcm(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    return monic(divmod_(mul(p, q), gcd(p, q))[0])


def derivative(p: Poly) -> Poly:
    return make(i * c for i, c in enumerate(p))[1:] if len(p) > 1 else ZERO


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct monic irreducible factors of ``p``."""
    g = gcd(p, derivative(p))
    return monic(divmod_(p, g)[0])


def is_squarefree(p: Poly) -> bool:
    return degree(gcd(p, derivative(p))) == 0


def evaluate(p: Poly, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_mod(p: Poly, s: Poly, m: Poly) -> Poly:
    """``p(s(x)) mod m(x)`` by Horner's rule."""
    acc = ZERO
    for c in reversed(p):
        acc = mod(add(mul(acc, s), make([c])), m)
    return acc


def inverse_mod(a: Poly, m: Poly) -> Poly:
    """Inverse of ``a`` in Q[x]/(m); raises ZeroDivisionError if not a unit."""
    r0, r1 = m, mod(a, m)
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, sub(t0, mul(q, t1))
    if degree(r0) != 0:
        raise ZeroDivisionError("not invertible modulo m")
    return mod(scale(t0, 1 / r0[0]), m)


def from_roots(roots: Sequence) -> Poly:
    p = ONE
    for r in roots:
        p = mul(p, make([-Fraction(r), 1]))
    return p
