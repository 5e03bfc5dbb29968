"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Sequence


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("binary floats are not accepted as exact coefficients")
    return Fraction(c)


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    """Polynomial ``c[0] + c[1]*v + ... + c[n]*v**n`` over the rationals.

    Instances are immutable. The variable tag only affects printing.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        object.__setattr__(self, "coeffs", _strip([_frac(c) for c in coeffs]))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...], var: str) -> "UniPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        object.__setattr__(p, "var", var)
        return p

    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> "UniPoly":
        return cls([0] * k + [c], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "x") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-_frac(r), 1], var)
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([_frac(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        return format_terms(((k,), c) for k, c in enumerate(self.coeffs)
                            if c != 0)(var_names=(self.var,))

    # -- ring operations -----------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other).coeffs
        a = self.coeffs
        if len(a) < len(o):
            a, o = o, a
        out = list(a)
        for i, c in enumerate(o):
            out[i] += c
        return UniPoly._raw(_strip(out), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return UniPoly._raw((), self.var)
            return UniPoly._raw(tuple(a * c for a in self.coeffs), self.var)
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly._raw(_strip(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / _frac(other))
        return NotImplemented

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        if len(r) - 1 < db:
            return UniPoly._raw((), self.var), self
        q = [Fraction(0)] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lcb
            q[k] = c
            if c:
                for i in range(db + 1):
                    r[k + i] -= c * bc[i]
        return UniPoly._raw(_strip(q), self.var), UniPoly._raw(_strip(r[:db]), self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly | int | Fraction") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / _frac(other))
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- calculus / evaluation -----------------------------------------
    def deriv(self) -> "UniPoly":
        return UniPoly._raw(_strip([k * c for k, c in enumerate(self.coeffs)][1:]), self.var)

    def __call__(self, v):
        """Horner evaluation; works for any value supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc if self.coeffs else Fraction(0) * 0

    def eval_float(self, v: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * v + float(c)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly._raw((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, a) -> "UniPoly":
        """p(v + a)."""
        return self.compose(UniPoly([a, 1], self.var))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly._raw(self.coeffs, var)

    # -- integer views -------------------------------------------------
    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficients proportional to this polynomial
        (positive leading coefficient)."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // igcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = igcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    def primitive(self) -> "UniPoly":
        return UniPoly(self.integer_coeffs(), self.var)

    def sign_at(self, r: Fraction) -> int:
        """Exact sign of p(r) for rational r."""
        v = self(_frac(r))
        return (v > 0) - (v < 0)

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Rigorous enclosure of p over [lo, hi] by interval Horner."""
        a = b = Fraction(0)
        for c in reversed(self.coeffs):
            prods = (a * lo, a * hi, b * lo, b * hi)
            a, b = min(prods) + c, max(prods) + c
        return a, b


def format_terms(terms):
    """Build a printer for ``(exponents, coeff)`` pairs, highest terms first."""
    terms = sorted(terms, key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def render(var_names) -> str:
        if not terms:
            return "0"
        out = []
        for exps, c in terms:
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(var_names, exps) if e
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    return render


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals."""
    if a.is_zero() and b.is_zero():
        raise ArithmeticError("gcd of two zero polynomials (degenerate elimination)")
    # integer-primitive Euclid keeps denominators from exploding
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def gcd_many(polys: Sequence[UniPoly]) -> UniPoly:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ArithmeticError("gcd of zero polynomials")
    g = nonzero[0].monic()
    for p in nonzero[1:]:
        if g.degree == 0:
            break
        g = gcd(g, p)
    return g


def squarefree_part(p: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors, made primitive."""
    if p.is_zero():
        raise ArithmeticError("squarefree part of the zero polynomial")
    if p.degree <= 0:
        return UniPoly([1], p.var)
    g = gcd(p, p.deriv())
    return p.exact_div(g).primitive()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: list of (squarefree factor, multiplicity)."""
    if p.is_zero():
        raise ArithmeticError("squarefree decomposition of the zero polynomial")
    out = []
    if p.degree <= 0:
        return out
    dp = p.deriv()
    a = gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.deriv()
    i = 1
    while b.degree > 0:
        a = gcd(b, d) if not d.is_zero() else b.monic()
        if a.degree > 0:
            out.append((a.primitive(), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.deriv()
        i += 1
    return out


def sign_variations(seq: Sequence) -> int:
    last = 0
    count = 0
    for c in seq:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction], var: str = "x") -> UniPoly:
    """Lagrange interpolation through distinct rational nodes."""
    result = UniPoly([], var)
    for i, xi in enumerate(xs):
        basis = UniPoly([1], var)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly([-xj, 1], var)
                denom *= xi - xj
        result = result + basis * (_frac(ys[i]) / denom)
    return result
