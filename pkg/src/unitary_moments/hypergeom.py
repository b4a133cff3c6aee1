"""Hypergeometric functions of a matrix argument, at scalar matrices only.

    pFq(a; b; M) = sum_lam  prod_i (a_i ↑ lam) / prod_j (b_j ↑ lam) * s_lam(M) / h_lam

For ``M = z * Id_N`` the Schur factor is ``z^|lam| s_lam(1^N)`` and partitions
longer than ``N`` drop out.  A term whose upper Pochhammer product vanishes is
treated as zero before its denominator is inspected, which is the usual
convention for terminating series with negative integer upper parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import DomainError, PoleError, UnsupportedFeatureError
from .moments import m_ratio_finite
from .partitions import enumerate_partitions, hook_number, poch_up
from .schur import schur_eval_ones

Rational = int | Fraction


@dataclass(frozen=True)
class HyperParams:
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    N: int
    z: Fraction
    max_degree: int

    def __init__(
        self,
        upper: Iterable[Rational],
        lower: Iterable[Rational],
        N: int,
        z: Rational,
        max_degree: int,
    ):
        if N < 1:
            raise DomainError(f"matrix size must be positive, got N={N}")
        if max_degree < 0:
            raise DomainError(f"max_degree must be nonnegative, got {max_degree}")
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in lower))
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "z", Fraction(z))
        object.__setattr__(self, "max_degree", max_degree)


def _term(upper: Sequence[Fraction], lower: Sequence[Fraction], N: int, lam) -> Fraction:
    num = prod((poch_up(a, lam) for a in upper), start=Fraction(1))
    if num == 0:
        return Fraction(0)
    den = prod((poch_up(b, lam) for b in lower), start=Fraction(1))
    if den == 0:
        raise PoleError(f"denominator vanishes at partition {tuple(lam)}")
    return num / den * schur_eval_ones(lam, N) / hook_number(lam)


def hyper_layer(upper: Sequence[Rational], lower: Sequence[Rational], N: int, degree: int) -> Fraction:
    """Coefficient of ``z^degree`` in ``pFq(upper; lower; z * Id_N)``."""
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    return sum(
        (_term(upper, lower, N, lam) for lam in enumerate_partitions(degree) if len(lam) <= N),
        Fraction(0),
    )


def hyper_layers(p: HyperParams) -> list[Fraction]:
    return [hyper_layer(p.upper, p.lower, p.N, d) for d in range(p.max_degree + 1)]


def hyper_pfq_scalar(p: HyperParams) -> Fraction:
    """Truncated ``pFq`` at ``z * Id_N``, summed over partitions of size ``<= max_degree``."""
    total = Fraction(0)
    for d, layer in enumerate(hyper_layers(p)):
        total += layer * p.z**d
    return total


def hyper_pfq_matrix(
    upper: Sequence[Rational],
    lower: Sequence[Rational],
    eigenvalues: Sequence[Rational],
    max_degree: int,
) -> Fraction:
    """Entry point taking a spectrum; only scalar matrices are supported."""
    eig = [Fraction(e) for e in eigenvalues]
    if not eig:
        raise DomainError("empty spectrum")
    if any(e != eig[0] for e in eig):
        raise UnsupportedFeatureError("hypergeometric functions are only implemented at scalar matrices")
    return hyper_pfq_scalar(HyperParams(upper, lower, len(eig), eig[0], max_degree))


@dataclass(frozen=True)
class EgfCheck:
    k: int
    N: int
    moment_side: list[Fraction] = field(default_factory=list)
    hyper_side: list[Fraction] = field(default_factory=list)

    @property
    def flags(self) -> list[bool]:
        return [a == b for a, b in zip(self.moment_side, self.hyper_side)]

    @property
    def residuals(self) -> list[Fraction]:
        return [a - b for a, b in zip(self.moment_side, self.hyper_side)]

    def __bool__(self) -> bool:
        return all(self.flags)


def egf_check(k: int, N: int, r_max: int) -> EgfCheck:
    """Compare ``m_r / r!`` with the degree-r layer of ``1F1(-k; -2k; z Id_N)`` for ``r <= r_max``."""
    if r_max > 2 * k:
        raise DomainError(f"requires r_max <= 2k, got r_max={r_max}, k={k}")
    if r_max < 0:
        raise DomainError("r_max must be nonnegative")
    moment_side = [m_ratio_finite(k, r, N) / factorial(r) for r in range(r_max + 1)]
    hyper_side = [hyper_layer([-k], [-2 * k], N, r) for r in range(r_max + 1)]
    return EgfCheck(k, N, moment_side, hyper_side)
