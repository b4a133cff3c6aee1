from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from oracles import m_ratio_by_differentiation, ssyt
from unitary_moments.algebra import Poly
from unitary_moments.errors import DomainError, InconsistencyError
from unitary_moments import moments
from unitary_moments.moments import (
    MomentKind,
    m_ratio_finite,
    m_ratio_finite_polyN,
    m_ratio_limit,
    m_ratio_limit_ratfunc,
    moment_zero_finite,
    moment_zero_limit,
    record,
    v_moment_finite,
    v_ratio_limit,
    v_ratio_limit_ratfunc,
)


def test_m_ratio_finite_examples():
    for k in range(1, 4):
        for N in range(1, 5):
            assert m_ratio_finite(k, 0, N) == 1
            assert m_ratio_finite(k, 1, N) == Fraction(N, 2)
    assert m_ratio_finite(1, 2, 2) == Fraction(1, 3)


def test_m_ratio_limit_examples():
    assert m_ratio_limit(3, 0) == 1
    assert m_ratio_limit(4, 1) == Fraction(1, 2)
    assert m_ratio_limit(1, 2) == Fraction(1, 6)
    assert m_ratio_limit(2, 2) == Fraction(7, 30)
    for k in range(1, 10):
        assert m_ratio_limit(k, 2) == Fraction(2 * k * k - 1, 2 * (4 * k * k - 1))


def test_domain_guards():
    with pytest.raises(DomainError, match="r <= 2k"):
        m_ratio_finite(1, 3, 2)
    with pytest.raises(DomainError):
        m_ratio_limit(2, 5)
    with pytest.raises(DomainError):
        m_ratio_finite_polyN(1, 3)
    with pytest.raises(DomainError):
        m_ratio_finite(0, 0, 2)
    with pytest.raises(DomainError):
        v_moment_finite(1, 2, 3)
    with pytest.raises(DomainError):
        m_ratio_finite(1, 1, 0)


@pytest.mark.parametrize(
    "k,r,N",
    [(1, r, N) for r in range(3) for N in (1, 2, 3)]
    + [(2, r, N) for r in range(5) for N in (1, 2, 3)]
    + [(3, r, 2) for r in range(7)],
)
def test_m_ratio_finite_against_differentiation(k, r, N):
    assert m_ratio_finite(k, r, N) == m_ratio_by_differentiation(k, r, N)


def test_ratfunc_examples():
    k = Poly.x()
    assert m_ratio_limit_ratfunc(0) == 1
    assert m_ratio_limit_ratfunc(1) == Fraction(1, 2)
    r2 = m_ratio_limit_ratfunc(2)
    assert r2(1) == Fraction(1, 6) and r2(2) == Fraction(7, 30)
    assert r2.num == (2 * k * k - 1).scale(Fraction(1, 8))
    assert r2.den == k * k - Fraction(1, 4)


def test_ratfunc_against_sympy():
    ks = sympy.Symbol("k")
    from unitary_moments.partitions import contents, enumerate_partitions, hook_number

    for r in range(7):
        expr = sum(
            sympy.Rational(factorial(r), hook_number(mu) ** 2)
            * sympy.Mul(*[ks + c for c in contents(mu)])
            / sympy.Mul(*[2 * ks + c for c in contents(mu)])
            for mu in enumerate_partitions(r)
        )
        num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
        num, den = sympy.Poly(num, ks), sympy.Poly(den, ks)
        lead = den.LC()
        to_fracs = lambda p: [Fraction(int(q.p), int(q.q)) for q in (c / lead for c in reversed(p.all_coeffs()))]
        f = m_ratio_limit_ratfunc(r)
        assert f.num == Poly(to_fracs(num)) and f.den == Poly(to_fracs(den))


@pytest.mark.parametrize("r", range(0, 9))
def test_ratfunc_matches_scalar(r):
    f = m_ratio_limit_ratfunc(r)
    for k in range(max(1, -(-r // 2)), 12):
        assert f(k) == m_ratio_limit(k, r)


@pytest.mark.parametrize("r", range(0, 13))
def test_ratfunc_structure(r):
    f = m_ratio_limit_ratfunc(r)
    assert f.is_even()
    assert f.num.degree == f.den.degree
    assert f.limit_at_infinity() == Fraction(1, 2**r)


def test_polyN_examples():
    assert m_ratio_finite_polyN(2, 0) == Poly.const(1, "N")
    assert m_ratio_finite_polyN(3, 1) == Poly((0, Fraction(1, 2)), "N")
    p = m_ratio_finite_polyN(1, 2)
    assert p(2) == Fraction(1, 3) and p.leading == Fraction(1, 6)


def test_polyN_consistency_with_limit():
    for k in range(1, 5):
        for r in range(1, 2 * k + 1):
            p = m_ratio_finite_polyN(k, r)
            assert p.degree == r
            assert p.leading == m_ratio_limit(k, r)
            for N in range(1, 13):
                assert p(N) == m_ratio_finite(k, r, N)


def count_ssyt(shape, n):
    return sum(1 for _ in ssyt(shape, n))


def test_moment_zero_examples():
    assert moment_zero_finite(1, 2) == 3
    assert moment_zero_finite(2, 2) == 20
    assert moment_zero_finite(1, 1) == 2
    assert moment_zero_limit(1) == 1
    assert moment_zero_limit(2) == Fraction(1, 12)
    assert moment_zero_limit(3) == Fraction(1, 8640)


def test_moment_zero_counts_tableaux():
    for k in range(1, 4):
        for N in range(1, 4):
            assert moment_zero_finite(k, N) == count_ssyt((N,) * k, 2 * k)


def test_moment_zero_limit_is_leading_growth():
    # M_N(2k,0) / N^{k^2} approaches the limit; check monotone closeness at large N
    for k in (1, 2, 3):
        errs = [abs(moment_zero_finite(k, N) / N ** (k * k) - moment_zero_limit(k)) for N in (50, 100, 200)]
        assert errs[0] > errs[1] > errs[2]
        # O(1/N) convergence: quadrupling N cuts the error by at least 3
        assert errs[2] < errs[0] / 3


def test_moment_zero_inconsistency(monkeypatch):
    monkeypatch.setattr(moments, "barnes_g", lambda n: 1)
    with pytest.raises(InconsistencyError):
        moment_zero_finite(2, 2)


def test_v_moment_examples():
    for k in range(1, 4):
        for N in range(1, 4):
            assert v_moment_finite(k, 0, N) == moment_zero_finite(k, N)
    assert v_moment_finite(1, 1, 2) == 2


def test_v_moment_matches_complex_binomial_sum():
    # evaluate the binomial sum with sympy's I to make sure the sign bookkeeping is right
    for k in range(1, 4):
        for h in range(0, k + 1):
            for N in range(1, 5):
                M0 = moment_zero_finite(k, N)
                total = sum(
                    comb(2 * h, i)
                    * sympy.Rational(M0 * m_ratio_finite(k, i, N)) * sympy.I ** (-i)
                    * (sympy.I * sympy.Rational(N, 2)) ** (2 * h - i)
                    for i in range(2 * h + 1)
                )
                total = sympy.nsimplify(sympy.expand(total))
                assert sympy.im(total) == 0
                assert Fraction(int(total.p), int(total.q)) == v_moment_finite(k, h, N)


def test_v_moment_nonnegative():
    for k in range(1, 5):
        for h in range(0, k + 1):
            for N in range(1, 7):
                assert v_moment_finite(k, h, N) >= 0


def test_v_ratfunc_examples():
    k = Poly.x()
    assert v_ratio_limit_ratfunc(0) == 1
    v1 = v_ratio_limit_ratfunc(1)
    assert v1 == moments.RatFunc(Poly.const(1), (k * k).scale(16) - 4)
    assert v1(1) == Fraction(1, 12)


def test_v_ratfunc_matches_scalar_and_is_nonnegative():
    for h in range(0, 5):
        f = v_ratio_limit_ratfunc(h)
        for k in range(max(h, 1), 12):
            assert f(k) == v_ratio_limit(k, h)
            assert f(k) >= 0


def test_v_ratfunc_is_limit_of_finite():
    # V_N(2k,2h)/(N^{2h} M_N(2k,0)) tends to the limiting ratio
    k, h = 2, 1
    target = v_ratio_limit(k, h)
    errs = [abs(v_moment_finite(k, h, N) / (N ** (2 * h) * moment_zero_finite(k, N)) - target) for N in (20, 80, 320)]
    assert errs[0] > errs[1] > errs[2]


def test_leading_coefficient_claim():
    for h in range(0, 5):
        f = v_ratio_limit_ratfunc(h)
        assert f.den.degree - f.num.degree == 2 * h
        lead = f.num.leading / f.den.leading * 2 ** (2 * h)
        assert lead == Fraction(factorial(2 * h), factorial(h) * 2 ** (3 * h))


def test_records():
    rec = record(MomentKind.M_RATIO_FINITE, 1, 2, 2)
    assert rec.value == Fraction(1, 3) and rec.i_power == 2 and rec.convention == "i-normalized"
    assert record("V_finite", 1, 2, 2).value == 2
    assert record(MomentKind.V_RATIO_LIMIT, 1, 2).value == Fraction(1, 12)
    assert record(MomentKind.M_ZERO_LIMIT, 2).value == Fraction(1, 12)
    assert record(MomentKind.M_ZERO_FINITE, 2, 0, 2).i_power is None
    with pytest.raises(DomainError):
        record(MomentKind.V_FINITE, 2, 3, 2)
