"""Brute-force references shared by several test modules.

None of these touch the package's formula paths: Schur functions come from
enumerating semistandard tableaux, and moment ratios from differentiating the
resulting polynomials with sympy.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod

import sympy


def ssyt(shape, n):
    """Yield every semistandard tableau of ``shape`` with entries in 1..n, as row lists."""
    shape = tuple(shape)
    cells = [(i, j) for i, part in enumerate(shape) for j in range(part)]
    filling: dict[tuple[int, int], int] = {}

    def place(idx):
        if idx == len(cells):
            yield [[filling[(i, j)] for j in range(part)] for i, part in enumerate(shape)]
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, n + 1):
            filling[(i, j)] = v
            yield from place(idx + 1)
        filling.pop((i, j), None)

    yield from place(0)


def schur_brute(shape, values):
    values = [Fraction(v) for v in values]
    total = Fraction(0)
    for t in ssyt(shape, len(values)):
        total += prod((values[e - 1] for row in t for e in row), start=Fraction(1))
    return total


@lru_cache(maxsize=None)
def schur_symbolic(shape, n):
    """``s_shape(x_1..x_n)`` as a sympy expression, with its symbols."""
    xs = sympy.symbols(f"x1:{n + 1}")
    expr = sympy.Integer(0)
    for t in ssyt(shape, n):
        expr += sympy.Mul(*[xs[e - 1] for row in t for e in row])
    return sympy.expand(expr), xs


def m_ratio_by_differentiation(k: int, r: int, N: int) -> Fraction:
    """``i^r M_N(2k,r)/M_N(2k,0)`` from the mixed derivative of ``s_{<N^k>}`` at the identity.

    The average equals d/da_1...d/da_r of s_{<N^k>} at 2k-r ones and r points
    1 - i a_j.  Each d/da_j is -i d/dx_j, so multiplying by i^r leaves the
    real mixed derivative in the x variables divided by s(1^{2k}).
    """
    shape = (N,) * k
    expr, xs = schur_symbolic(shape, 2 * k)
    d = expr
    for j in range(r):
        d = sympy.diff(d, xs[j])
    at_one = {x: 1 for x in xs}
    val = sympy.Rational(d.subs(at_one)) / sympy.Rational(expr.subs(at_one))
    return Fraction(int(val.p), int(val.q))
