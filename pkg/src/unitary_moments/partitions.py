"""Integer partitions and the hook / content combinatorics built on them.

Cells use 1-based ``(row, col)`` coordinates in the English convention, so
the content of a cell is ``col - row``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial, prod
from typing import Iterator, NamedTuple, Sequence

from .algebra import Poly
from .errors import CapacityError, DomainError, InconsistencyError

ENUMERATION_LIMIT = 200

Rational = int | Fraction


class Cell(NamedTuple):
    row: int
    col: int


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    >>> Partition((9, 6, 2, 1)).conjugate()
    Partition(4, 3, 2, 2, 2, 2, 1, 1, 1)
    """

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()) -> Partition:
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({', '.join(map(str, self))})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        return conjugate(self)

    def cells(self) -> Iterator[Cell]:
        for i, part in enumerate(self, start=1):
            for j in range(1, part + 1):
                yield Cell(i, j)

    def contains(self, other: Sequence[int]) -> bool:
        """True when the diagram of ``other`` fits inside this one."""
        if len(other) > len(self):
            return False
        return all(b <= a for a, b in zip(self, other))


def rectangle(width: int, height: int) -> Partition:
    """The partition with ``height`` rows of length ``width``, written ⟨width^height⟩."""
    if width < 0 or height < 0:
        raise DomainError("rectangle sides must be nonnegative")
    if width == 0 or height == 0:
        return Partition()
    return Partition((width,) * height)


def _reverse_lex(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _reverse_lex(n - first, first):
            yield (first,) + rest


@cache
def _partitions_of(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _reverse_lex(n, n))


def enumerate_partitions(n: int, limit: int = ENUMERATION_LIMIT) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order.

    Raises :class:`CapacityError` when ``n`` exceeds ``limit``.  The guard only
    stops obviously hopeless requests; p(60) = 966467 is already slow.
    """
    if n < 0:
        raise DomainError(f"cannot partition a negative integer: {n}")
    if n > limit:
        raise CapacityError(f"partition enumeration limited to n <= {limit}, got {n}")
    return list(_partitions_of(n))


def partitions_up_to(n: int, max_length: int | None = None) -> Iterator[Partition]:
    """Partitions of every size ``0..n`` in increasing size, optionally of bounded length."""
    for m in range(n + 1):
        for lam in enumerate_partitions(m):
            if max_length is None or len(lam) <= max_length:
                yield lam


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def contents(lam: Sequence[int]) -> list[int]:
    return [j - i for i, part in enumerate(lam, start=1) for j in range(1, part + 1)]


def hook_lengths(lam: Sequence[int]) -> list[int]:
    conj = conjugate(lam)
    return [
        (part - j) + (conj[j - 1] - i) + 1
        for i, part in enumerate(lam, start=1)
        for j in range(1, part + 1)
    ]


@cache
def _hook_number(lam: tuple[int, ...]) -> int:
    return prod(hook_lengths(lam))


def hook_number(lam: Sequence[int]) -> int:
    return _hook_number(tuple(lam))


def dim_sym(lam: Sequence[int]) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula)."""
    n = sum(lam)
    q, rem = divmod(factorial(n), hook_number(lam))
    if rem:
        raise InconsistencyError(f"{n}! is not divisible by the hook number of {tuple(lam)}")
    return q


def plancherel_weight(lam: Sequence[int]) -> Fraction:
    h = hook_number(lam)
    return Fraction(factorial(sum(lam)), h * h)


def poch_up(x: Rational, mu: Sequence[int]) -> Fraction:
    """Generalized rising factorial: the product of ``x + c`` over cell contents ``c`` of ``mu``."""
    return Fraction(prod((x + c for c in contents(mu)), start=Fraction(1)))


def poch_poly(scale: int, mu: Sequence[int], var: str = "k") -> Poly:
    """The polynomial ``prod(scale*k + c)`` over cell contents ``c`` of ``mu``."""
    if scale == 0:
        raise DomainError("poch_poly needs a nonzero scale")
    result = Poly.const(1, var)
    for c in contents(mu):
        result = result * Poly.linear(scale, c, var)
    return result


def rising(x: Rational, n: int) -> Fraction:
    """``x (x+1) ... (x+n-1)``; for ``n < 0`` the reciprocal ``1 / ((x+n) rising |n|)``."""
    if n >= 0:
        return Fraction(prod((x + i for i in range(n)), start=Fraction(1)))
    return _reciprocal(rising(x + n, -n), x, n)


def falling(x: Rational, n: int) -> Fraction:
    """``x (x-1) ... (x-n+1)``; for ``n < 0`` the reciprocal ``1 / ((x+1) rising |n|)``.

    Both negative conventions make
    ``falling(N + a - 1, a + b) == rising(N, a) * falling(N - 1, b)``
    hold for all integers ``a, b``.
    """
    if n >= 0:
        return Fraction(prod((x - i for i in range(n)), start=Fraction(1)))
    return _reciprocal(rising(x + 1, -n), x, n)


def _reciprocal(value: Fraction, x: Rational, n: int) -> Fraction:
    if value == 0:
        raise ZeroDivisionError(f"negative-order Pochhammer symbol at x={x}, n={n} has a pole")
    return 1 / value
