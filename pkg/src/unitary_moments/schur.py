"""Schur and shifted Schur functions at the special points the moment formulas need.

General evaluation goes through the Jacobi-Trudi determinant of complete
homogeneous symmetric polynomials, which has no trouble with repeated
arguments (the bialternant formula is 0/0 there).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .algebra import det
from .errors import DimensionError, DomainError, InconsistencyError
from .partitions import (
    Partition,
    conjugate,
    falling,
    hook_number,
    partitions_up_to,
    poch_up,
    rectangle,
)

Rational = int | Fraction


@dataclass(frozen=True)
class SpecializationPoint:
    """Arguments ``x_1..x_n`` of a symmetric function; trailing zeros are implicit."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable[Rational]):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))

    def __len__(self) -> int:
        return len(self.values)

    def shifted(self, by: Rational) -> SpecializationPoint:
        return SpecializationPoint(v + by for v in self.values)


def complete_homogeneous(degree: int, values: Sequence[Rational]) -> list[Fraction]:
    """``[h_0, ..., h_degree]`` at ``values``, from the product of ``1/(1 - x t)``."""
    h = [Fraction(1)] + [Fraction(0)] * degree
    for x in values:
        for r in range(1, degree + 1):
            h[r] += x * h[r - 1]
    return h


def schur_eval(lam: Sequence[int], pt: SpecializationPoint | Sequence[Rational]) -> Fraction:
    values = pt.values if isinstance(pt, SpecializationPoint) else tuple(pt)
    lam = tuple(lam)
    if len(values) < len(lam):
        raise DimensionError(
            f"partition of length {len(lam)} needs at least {len(lam)} arguments, got {len(values)}"
        )
    if not lam:
        return Fraction(1)
    top = lam[0] + len(lam)
    h = complete_homogeneous(top, values)

    def entry(r: int) -> Fraction:
        return h[r] if 0 <= r <= top else Fraction(0)

    n = len(lam)
    return det([[entry(lam[i] - i + j) for j in range(n)] for i in range(n)])


def schur_eval_ones(lam: Sequence[int], k: int) -> Fraction:
    """``s_lam(1^k)`` by the hook-content formula."""
    return poch_up(k, lam) / hook_number(lam)


def _h_ones(r: int, k: int) -> int:
    if r < 0:
        return 0
    if k == 0:
        return int(r == 0)
    return comb(k + r - 1, r)


def h_star_rect(r: int, k: int, N: int) -> Fraction:
    """Shifted complete function ``h*_r`` at the rectangle ⟨N^k⟩: ``(N falling r) * h_r(1^k)``."""
    if r < 0:
        return Fraction(0)
    return falling(N, r) * _h_ones(r, k)


def _shifted_det(mu: Sequence[int], k: int, N: int, size: int) -> Fraction:
    parts = list(mu) + [0] * (size - len(mu))
    return det(
        [
            [h_star_rect(parts[i] - (i + 1) + (j + 1), k, N + j) for j in range(size)]
            for i in range(size)
        ]
    )


def shifted_schur_rect(mu: Sequence[int], k: int, N: int) -> Fraction:
    """Shifted Schur function ``s*_mu`` at the rectangle with ``k`` rows of length ``N``.

    Three independent expressions are evaluated and must agree:
    ``h_mu * s_{mu^t}(1^N) * s_mu(1^k)``, the content product
    ``(-1)^|mu| ((-N)↑mu)(k↑mu) / h_mu``, and the determinant of shifted
    complete functions with rows of size ``l(mu)`` (also checked at ``l(mu)+1``).
    The value vanishes unless ``mu`` fits in the rectangle.
    """
    if k < 0 or N < 0:
        raise DomainError("rectangle sides must be nonnegative")
    mu = Partition(mu)
    h = hook_number(mu)
    via_schur = h * schur_eval_ones(conjugate(mu), N) * schur_eval_ones(mu, k)
    via_contents = (-1) ** mu.size * poch_up(-N, mu) * poch_up(k, mu) / h
    size = len(mu)
    via_det = _shifted_det(mu, k, N, size)
    via_det_next = _shifted_det(mu, k, N, size + 1)
    if not via_schur == via_contents == via_det == via_det_next:
        raise InconsistencyError(
            f"shifted Schur values disagree for mu={tuple(mu)}, k={k}, N={N}: "
            f"{via_schur}, {via_contents}, {via_det}, {via_det_next}"
        )
    return via_schur


@dataclass(frozen=True)
class BinomialCheck:
    equal: bool
    lhs: Fraction
    rhs: Fraction

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs

    def __bool__(self) -> bool:
        return self.equal


def binomial_check(
    k: int, N: int, n: int, pt: SpecializationPoint | Sequence[Rational]
) -> BinomialCheck:
    """Taylor expansion of ``s_lam`` around the identity for the rectangle ``lam`` = ⟨k^N⟩.

    Compares ``s_lam(1+x_1, ..., 1+x_n) / s_lam(1^n)`` with
    ``sum_mu s*_mu(lam) s_mu(x) / (n↑mu)`` over ``mu`` inside ``lam``.
    """
    if k < 1 or N < 1:
        raise DomainError("binomial_check needs positive k and N")
    if n < N:
        raise DimensionError(f"binomial_check needs n >= N, got n={n}, N={N}")
    x = pt if isinstance(pt, SpecializationPoint) else SpecializationPoint(pt)
    if len(x) != n:
        raise DimensionError(f"point has {len(x)} coordinates, expected n={n}")
    lam = rectangle(k, N)
    lhs = schur_eval(lam, x.shifted(1)) / schur_eval_ones(lam, n)
    rhs = Fraction(0)
    for mu in partitions_up_to(lam.size, max_length=N):
        if not lam.contains(mu):
            continue
        # lam has N rows of length k
        rhs += shifted_schur_rect(mu, N, k) * schur_eval(mu, x) / poch_up(n, mu)
    return BinomialCheck(lhs == rhs, lhs, rhs)
