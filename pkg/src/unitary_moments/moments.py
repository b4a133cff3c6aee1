"""Exact moments of derivatives of characteristic polynomials of Haar unitaries.

Notation: for a Haar-random ``U`` in ``U(N)`` with characteristic polynomial
``Z(θ) = prod_j (1 - exp(i(θ_j - θ)))``,

* ``M_N(2k, r) = E[|Z(0)|^{2k} (Z'(0)/Z(0))^r]`` and its large-N limit
  ``M(2k, r) = lim M_N(2k, r) / N^{k^2 + r}``;
* ``V_N(2k, 2h) = E[|V(0)|^{2k} |V'(0)/V(0)|^{2h}]`` with ``V`` the real
  rotation of ``Z``.

Every M-ratio is stored *i-normalized*: ``m_r = i^r M(2k, r) / M(2k, 0)``,
which is a real rational.  The raw moment is ``m_r * i^{-r} * M(2k, 0)``.

V-moments.  Since ``V'/V = iN/2 + Z'/Z`` is real at θ = 0,

    V_N(2k, 2h) = sum_i C(2h, i) M_N(2k, i) (iN/2)^{2h-i}.

Writing ``M_N(2k, i) = M_N(2k, 0) m_i i^{-i}`` the power of ``i`` in each term
is ``i^{2h-2i} = (-1)^{h-i}``, so

    V_N(2k, 2h) / M_N(2k, 0) = sum_i C(2h, i) (-1)^{h-i} (N/2)^{2h-i} m_i.

Dividing by ``N^{k^2+2h}`` and letting N grow replaces ``N/2`` by ``1/2`` and
``m_i`` by its limit.  The code tracks the power of ``i`` explicitly and
raises :class:`InconsistencyError` if an odd power ever survives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb, factorial

from .algebra import Poly, RatFunc, barnes_g
from .errors import DomainError, InconsistencyError
from .partitions import enumerate_partitions, hook_number, poch_poly, poch_up, rectangle
from .schur import schur_eval_ones


class MomentKind(str, enum.Enum):
    M_RATIO_FINITE = "M_ratio_finite"
    M_RATIO_LIMIT = "M_ratio_limit"
    M_ZERO_FINITE = "M_zero_finite"
    M_ZERO_LIMIT = "M_zero_limit"
    V_FINITE = "V_finite"
    V_RATIO_LIMIT = "V_ratio_limit"


I_NORMALIZED = "i-normalized"


@dataclass(frozen=True)
class MomentRecord:
    kind: MomentKind
    k: int
    r_or_2h: int
    N: int | None
    value: Fraction
    convention: str | None = None

    @property
    def i_power(self) -> int | None:
        """Power of i multiplying the raw moment to give ``value`` (M-ratios only)."""
        if self.kind in (MomentKind.M_RATIO_FINITE, MomentKind.M_RATIO_LIMIT):
            return self.r_or_2h
        return None


def _check_k(k: int) -> None:
    if k < 1:
        raise DomainError(f"requires k >= 1, got k={k}")


def _check_r(k: int, r: int) -> None:
    _check_k(k)
    if r < 0:
        raise DomainError(f"requires r >= 0, got r={r}")
    if r > 2 * k:
        raise DomainError(f"requires r <= 2k, got r={r}, k={k}")


def _check_N(N: int) -> None:
    if N < 1:
        raise DomainError(f"requires N >= 1, got N={N}")


def m_ratio_finite(k: int, r: int, N: int) -> Fraction:
    """``i^r M_N(2k, r) / M_N(2k, 0)`` as an exact rational."""
    _check_r(k, r)
    _check_N(N)
    total = Fraction(0)
    for mu in enumerate_partitions(r):
        h = hook_number(mu)
        total += Fraction(factorial(r), h * h) * poch_up(N, mu) * poch_up(-k, mu) / poch_up(-2 * k, mu)
    return total


def m_ratio_limit(k: int, r: int) -> Fraction:
    """``i^r M(2k, r) / M(2k, 0)`` as an exact rational."""
    _check_r(k, r)
    total = Fraction(0)
    for mu in enumerate_partitions(r):
        h = hook_number(mu)
        total += Fraction(factorial(r), h * h) * poch_up(k, mu) / poch_up(2 * k, mu)
    return total


@cache
def m_ratio_limit_ratfunc(r: int) -> RatFunc:
    """The limiting ratio ``m_r`` as a reduced rational function of ``k``.

    Built term by term from content polynomials; valid wherever ``r <= 2k``.
    """
    if r < 0:
        raise DomainError(f"requires r >= 0, got r={r}")
    total = RatFunc(0)
    for mu in enumerate_partitions(r):
        h = hook_number(mu)
        term = RatFunc(poch_poly(1, mu), poch_poly(2, mu))
        total = total + term * Fraction(factorial(r), h * h)
    return total


def m_ratio_finite_polyN(k: int, r: int) -> Poly:
    """``i^r M_N(2k, r) / M_N(2k, 0)`` as a polynomial in ``N`` of degree ``r``."""
    _check_r(k, r)
    total = Poly((), "N")
    for mu in enumerate_partitions(r):
        h = hook_number(mu)
        weight = Fraction(factorial(r), h * h) * poch_up(-k, mu) / poch_up(-2 * k, mu)
        total = total + poch_poly(1, mu, var="N").scale(weight)
    return total


def moment_zero_finite(k: int, N: int) -> Fraction:
    """``M_N(2k, 0) = s_{⟨N^k⟩}(1^{2k})``, by hook-content and by Barnes G."""
    _check_k(k)
    _check_N(N)
    via_hooks = schur_eval_ones(rectangle(N, k), 2 * k)
    via_barnes = Fraction(
        barnes_g(N + 2 * k + 1) * barnes_g(N + 1) * barnes_g(k + 1) ** 2,
        barnes_g(N + k + 1) ** 2 * barnes_g(2 * k + 1),
    )
    if via_hooks != via_barnes:
        raise InconsistencyError(
            f"M_N(2k,0) routes disagree at k={k}, N={N}: {via_hooks} vs {via_barnes}"
        )
    return via_hooks


def moment_zero_limit(k: int) -> Fraction:
    _check_k(k)
    return Fraction(barnes_g(k + 1) ** 2, barnes_g(2 * k + 1))


def _binomial_sum(h: int, ratios: list, half_n) -> object:
    """``sum_i C(2h, i) m_i (i*half_n)^{2h-i} i^{-i}`` with the powers of i collapsed.

    ``ratios[i]`` is the i-normalized ratio ``m_i``; works for rationals and
    rational functions alike.
    """
    total = 0
    for i in range(2 * h + 1):
        i_exponent = (2 * h - i) - i
        if i_exponent % 2:
            raise InconsistencyError(f"odd power of i survived in term {i} of the V-moment sum")
        sign = -1 if (i_exponent // 2) % 2 else 1
        total = total + ratios[i] * (sign * comb(2 * h, i) * half_n ** (2 * h - i))
    return total


def v_moment_finite(k: int, h: int, N: int) -> Fraction:
    """``V_N(2k, 2h)`` as an exact nonnegative rational."""
    _check_k(k)
    _check_N(N)
    if h < 0 or h > k:
        raise DomainError(f"requires 0 <= h <= k, got h={h}, k={k}")
    ratios = [m_ratio_finite(k, i, N) for i in range(2 * h + 1)]
    value = moment_zero_finite(k, N) * _binomial_sum(h, ratios, Fraction(N, 2))
    if value < 0:
        raise InconsistencyError(f"negative V-moment {value} at k={k}, h={h}, N={N}")
    return value


@cache
def v_ratio_limit_ratfunc(h: int) -> RatFunc:
    """``V(2k, 2h) / V(2k, 0)`` as a reduced rational function of ``k``."""
    if h < 0:
        raise DomainError(f"requires h >= 0, got h={h}")
    ratios = [m_ratio_limit_ratfunc(i) for i in range(2 * h + 1)]
    return RatFunc(1) * _binomial_sum(h, ratios, Fraction(1, 2))


def v_ratio_limit(k: int, h: int) -> Fraction:
    _check_k(k)
    if h < 0 or h > k:
        raise DomainError(f"requires 0 <= h <= k, got h={h}, k={k}")
    ratios = [m_ratio_limit(k, i) for i in range(2 * h + 1)]
    return _binomial_sum(h, ratios, Fraction(1, 2))


def record(kind: MomentKind | str, k: int, r_or_2h: int = 0, N: int | None = None) -> MomentRecord:
    """Compute one moment and wrap it with its parameters.

    For the V kinds ``r_or_2h`` is the even exponent ``2h``.
    """
    kind = MomentKind(kind)
    if kind in (MomentKind.V_FINITE, MomentKind.V_RATIO_LIMIT) and r_or_2h % 2:
        raise DomainError(f"V-moments need an even exponent, got {r_or_2h}")
    if kind is MomentKind.M_RATIO_FINITE:
        value = m_ratio_finite(k, r_or_2h, N)
    elif kind is MomentKind.M_RATIO_LIMIT:
        value = m_ratio_limit(k, r_or_2h)
    elif kind is MomentKind.M_ZERO_FINITE:
        value = moment_zero_finite(k, N)
    elif kind is MomentKind.M_ZERO_LIMIT:
        value = moment_zero_limit(k)
    elif kind is MomentKind.V_FINITE:
        value = v_moment_finite(k, r_or_2h // 2, N)
    else:
        value = v_ratio_limit(k, r_or_2h // 2)
    convention = I_NORMALIZED if kind in (MomentKind.M_RATIO_FINITE, MomentKind.M_RATIO_LIMIT) else None
    return MomentRecord(kind, k, r_or_2h, N, value, convention)
