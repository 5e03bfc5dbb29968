"""Exact arithmetic in a real quadratic field Q(sqrt(d))."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath

from .unipoly import _frac

_SMALL_PRIMES = None


def _primes(limit: int = 2000) -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i:: i] = bytearray(len(sieve[i * i:: i]))
        _SMALL_PRIMES = [i for i in range(limit + 1) if sieve[i]]
    return _SMALL_PRIMES


def split_square(n: int) -> tuple[int, int]:
    """Write n = k**2 * m with m as square-free as cheap trial division allows."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    k = 1
    for p in _primes():
        pp = p * p
        if pp > n:
            break
        while n % pp == 0:
            n //= pp
            k *= p
    r = isqrt(n)
    if r * r == n:
        return k * r, 1
    return k, n


def sqrt_rational(q: Fraction) -> tuple[Fraction, int]:
    """sqrt(q) = c * sqrt(d) with rational c and integer d >= 1."""
    q = _frac(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    if q == 0:
        return Fraction(0), 1
    # sqrt(a/b) = sqrt(a*b)/b
    k, d = split_square(q.numerator * q.denominator)
    return Fraction(k, q.denominator), d


class QuadSurd:
    """The real number ``a + b*sqrt(d)``; ``d`` is a positive integer."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a, b = _frac(a), _frac(b)
        d = int(d)
        if d <= 0:
            raise ValueError("radicand must be positive")
        if d != 1:
            k, d = split_square(d)
            b *= k
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadSurd is immutable")

    @classmethod
    def sqrt(cls, q) -> "QuadSurd":
        c, d = sqrt_rational(_frac(q))
        return cls(0, c, d)

    def is_rational(self) -> bool:
        return self.b == 0

    def _lift(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError(f"mixing Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        return QuadSurd(_frac(other))

    def _field(self, other: "QuadSurd") -> int:
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        return QuadSurd(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        d = self._field(o)
        return QuadSurd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * o.conjugate() * (1 / n)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        r = QuadSurd(1)
        for _ in range(k):
            r = r * self
        return r

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadSurd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        # rational values hash like the equal Fraction
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __float__(self):
        return float(self.to_mpf(30))

    def to_mpf(self, dps: int = 30):
        with mpmath.workdps(dps + 5):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator) * mpmath.sqrt(self.d)

    def __repr__(self):
        return f"QuadSurd({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        # b*sqrt(d) rendered as  num*sqrt(d)/den
        num, den = abs(self.b.numerator), self.b.denominator
        rad = (f"{num}*" if num != 1 else "") + f"sqrt({self.d})" + (f"/{den}" if den != 1 else "")
        if self.a == 0:
            return ("-" if self.b < 0 else "") + rad
        return f"{self.a} {'-' if self.b < 0 else '+'} {rad}"
