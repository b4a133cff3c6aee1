"""Exact univariate polynomials and rational functions over the rationals.

Scalars are :class:`fractions.Fraction`, which is always reduced with a
positive denominator.  Polynomials are dense, ascending-degree coefficient
tuples; rational functions are kept reduced with a monic denominator so that
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import DomainError

Rational = int | Fraction


def _trim(coeffs: Iterable[Rational]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Dense polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Rational] = (), var: str = "k"):
        self.coeffs = _trim(coeffs)
        self.var = var

    @classmethod
    def const(cls, c: Rational, var: str = "k") -> Poly:
        return cls((c,), var)

    @classmethod
    def x(cls, var: str = "k") -> Poly:
        return cls((0, 1), var)

    @classmethod
    def linear(cls, slope: Rational, intercept: Rational, var: str = "k") -> Poly:
        return cls((intercept, slope), var)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def scale(self, a: Rational) -> Poly:
        return Poly((a * c for c in self.coeffs), self.var)

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    evaluate = __call__

    def _coerce(self, other: Poly | Rational) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.var)
        return NotImplemented

    def __add__(self, other: Poly | Rational) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly((x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return self.scale(-1)

    def __sub__(self, other: Poly | Rational) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Rational) -> Poly:
        return (-self) + other

    def __mul__(self, other: Poly | Rational) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Poly.const(1, self.var)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return divrem(self, other)

    def __floordiv__(self, other: Poly) -> Poly:
        return divrem(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divrem(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]!r}, var={self.var!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = self.var if d == 1 else f"{self.var}^{d}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def divrem(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: ``p == q * quot + rem`` with ``deg rem < deg q``."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = q.degree
    lead = q.leading
    quot = [Fraction(0)] * max(len(rem) - dq, 0)
    for shift in range(len(rem) - 1 - dq, -1, -1):
        c = rem[shift + dq] / lead
        if c:
            quot[shift] = c
            for i, b in enumerate(q.coeffs):
                rem[shift + i] -= c * b
    return Poly(quot, p.var), Poly(rem[:dq] if dq > 0 else [], p.var)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0)`` is the zero polynomial."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, divrem(a, b)[1].monic()
    return a.monic()


class RatFunc:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Rational, den: Poly | Rational = 1, var: str | None = None):
        if not isinstance(num, Poly):
            num = Poly.const(num, var or (den.var if isinstance(den, Poly) else "k"))
        if not isinstance(den, Poly):
            den = Poly.const(den, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly((), num.var), Poly.const(1, num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @property
    def var(self) -> str:
        return self.num.var

    def __call__(self, x: Rational) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"rational function has a pole at {x}")
        return self.num(x) / d

    evaluate = __call__

    def _coerce(self, other: RatFunc | Poly | Rational) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFunc(other, 1, self.var)
        return NotImplemented

    def __add__(self, other: RatFunc | Poly | Rational) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: RatFunc | Poly | Rational) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other: RatFunc | Poly | Rational) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc | Poly | Rational) -> RatFunc:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Poly, int, Fraction)):
            other = RatFunc(other, 1)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_even(self) -> bool:
        return self.num.is_even() and self.den.is_even()

    def limit_at_infinity(self) -> Fraction:
        if self.num.degree > self.den.degree:
            raise DomainError("rational function diverges at infinity")
        if self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.leading / self.den.leading

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def ratfunc_reduce(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def barnes_g(n: int) -> int:
    """Barnes G at a positive integer: ``G(n) = 1! 2! ... (n-2)!``."""
    if n < 1:
        raise DomainError(f"barnes_g is only implemented at positive integers, got {n}")
    return prod((factorial(i) for i in range(1, n - 1)), start=1)


def det(matrix: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant by fraction-preserving Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("determinant of a non-square matrix")
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return result
