"""Exact planar algebraic points.

A point is stored as a real algebraic parameter ``u`` together with
rational functions ``X(u)``, ``Y(u)``.  This covers points found on a
line (``u = x``, ``Y`` linear), points recovered through a subresultant
(``Y = -b(u)/a(u)``) and points found after a shear of coordinates.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .bipoly import BiPoly
from .roots import AlgebraicNumber, isolate_real_roots
from .subres import subresultant
from .surd import QuadSurd
from .unipoly import UniPoly, _frac, squarefree_part


class RatFunc:
    """``num(u) / den(u)`` with rational coefficients; den is not zero."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        den = den if den is not None else UniPoly([1], num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # keep the denominator monic so printing is canonical
        c = den.lc
        object.__setattr__(self, "num", num * (1 / c))
        object.__setattr__(self, "den", den * (1 / c))

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def const(cls, c, var: str = "u") -> "RatFunc":
        return cls(UniPoly([c], var))

    @classmethod
    def identity(cls, var: str = "u") -> "RatFunc":
        return cls(UniPoly([0, 1], var))

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_identity(self) -> bool:
        return self.den == 1 and self.num.coeffs == (0, 1)

    def __call__(self, v):
        return self.num(v) / self.den(v)

    def __add__(self, o):
        if isinstance(o, (int, Fraction)):
            return RatFunc(self.num + self.den * _frac(o), self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return RatFunc(self.num * _frac(o), self.den)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def enclosure(self, lo: Fraction, hi: Fraction):
        """Interval enclosure over [lo, hi]; None if den may vanish."""
        a, b = self.num.eval_interval(lo, hi)
        c, d = self.den.eval_interval(lo, hi)
        if c <= 0 <= d:
            return None
        q = (a / c, a / d, b / c, b / d)
        return min(q), max(q)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def eval_bipoly_ratfunc(P: BiPoly, X: RatFunc, Y: RatFunc,
                        modulus: UniPoly | None = None) -> tuple[UniPoly, UniPoly]:
    """Numerator and denominator of P(X(u), Y(u)) without cancellation.

    With a modulus every product is reduced by it, which preserves the
    values at roots of the modulus.
    """
    dx, dy = P.deg_x, P.deg_y
    var = X.num.var
    if modulus is not None:
        modulus = modulus.with_var(var)

    def red(a: UniPoly) -> UniPoly:
        return a % modulus if modulus is not None and a.degree >= modulus.degree else a

    if P.is_zero():
        return UniPoly([], var), UniPoly([1], var)
    xn = [UniPoly([1], var)]
    xd = [UniPoly([1], var)]
    for _ in range(dx):
        xn.append(red(xn[-1] * X.num))
        xd.append(red(xd[-1] * X.den))
    yn = [UniPoly([1], var)]
    yd = [UniPoly([1], var)]
    for _ in range(dy):
        yn.append(red(yn[-1] * Y.num))
        yd.append(red(yd[-1] * Y.den))
    num = UniPoly([], var)
    for (i, j), c in P.terms.items():
        num = num + red(red(xn[i] * xd[dx - i]) * red(yn[j] * yd[dy - j])) * c
    return num, red(xd[dx] * yd[dy])


def number_from_surd(s: QuadSurd) -> AlgebraicNumber:
    if s.is_rational():
        return AlgebraicNumber.rational(s.a)
    q = UniPoly([s.norm(), -2 * s.a, 1])
    lo, hi = isolate_real_roots(q)
    return hi if s.b > 0 else lo


def image_number(u: AlgebraicNumber, F: RatFunc) -> AlgebraicNumber:
    """The algebraic number F(u)."""
    if F.is_constant():
        return AlgebraicNumber.rational(F(Fraction(0)))
    if F.is_identity():
        return u
    if u.is_rational():
        return AlgebraicNumber.rational(F(u.value))
    if u.closed is not None:
        return number_from_surd(F(u.closed))
    # defining polynomial: Res_u(def(u), den(u) w - num(u)) in w
    n = max(F.num.degree, F.den.degree)
    w = UniPoly([0, 1], "w")
    lin = [F.den[k] * w - F.num[k] for k in range(n + 1)]
    P = [UniPoly([c], "w") for c in u.defining.coeffs[::-1]]
    res = subresultant(P, lin[::-1], 0)[0]
    cands = isolate_real_roots(squarefree_part(res))
    cur = u
    while True:
        enc = F.enclosure(cur.lo, cur.hi) if not cur.is_rational() else None
        if enc is not None:
            lo, hi = enc
            hits = [c for c in cands if not (c.hi < lo or c.lo > hi)]
            if len(hits) == 1:
                return hits[0]
            cands = [c.refine(c.width / 2) if not c.is_rational() else c for c in hits]
        cur = cur.refine(cur.width / 4)
        if cur.is_rational():
            return AlgebraicNumber.rational(F(cur.value))


class AlgebraicPoint2D:
    """Exact point ``(X(u), Y(u))`` for a real algebraic parameter u."""

    __slots__ = ("u", "X", "Y", "_xn", "_yn")

    def __init__(self, u: AlgebraicNumber, X: RatFunc, Y: RatFunc):
        for F in (X, Y):
            if u.sign_of(F.den) == 0:
                raise ZeroDivisionError("coordinate denominator vanishes at the parameter")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "_xn", None)
        object.__setattr__(self, "_yn", None)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicPoint2D is immutable")

    @classmethod
    def rational(cls, x, y) -> "AlgebraicPoint2D":
        return cls(AlgebraicNumber.rational(0), RatFunc.const(_frac(x)), RatFunc.const(_frac(y)))

    @classmethod
    def on_x(cls, x: AlgebraicNumber, Y: RatFunc) -> "AlgebraicPoint2D":
        """Point with x-coordinate the given number and y = Y(x)."""
        return cls(x, RatFunc.identity(Y.num.var), Y)

    def sign_at(self, P: BiPoly) -> int:
        """Exact sign of P at this point."""
        if self.u.is_rational():
            v = P(self.X(self.u.value), self.Y(self.u.value))
            return (v > 0) - (v < 0)
        cf = self.closed_form()
        if cf is not None:
            v = P(cf[0], cf[1])
            return v.sign() if isinstance(v, QuadSurd) else (v > 0) - (v < 0)
        num, den = eval_bipoly_ratfunc(P, self.X, self.Y, self.u.defining)
        return self.u.sign_of(num) * self.u.sign_of(den)

    def satisfies(self, P: BiPoly) -> bool:
        return self.sign_at(P) == 0

    def x_number(self) -> AlgebraicNumber:
        if self._xn is None:
            object.__setattr__(self, "_xn", image_number(self.u, self.X))
        return self._xn

    def y_number(self) -> AlgebraicNumber:
        if self._yn is None:
            object.__setattr__(self, "_yn", image_number(self.u, self.Y))
        return self._yn

    def is_rational(self) -> bool:
        return self.x_number().is_rational() and self.y_number().is_rational()

    def closed_form(self) -> tuple[QuadSurd, QuadSurd] | None:
        if self.u.closed is None:
            return None
        return self.X(self.u.closed), self.Y(self.u.closed)

    def approx(self, dps: int = 30):
        """High precision (x, y) as mpmath numbers."""
        cf = self.closed_form()
        if cf is not None:
            return cf[0].to_mpf(dps), cf[1].to_mpf(dps)
        with mpmath.workdps(dps + 10):
            u = self.u.to_mpf(dps + 10)
            x = self.X.num(u) / self.X.den(u)
            y = self.Y.num(u) / self.Y.den(u)
        return x, y

    def to_float(self) -> tuple[float, float]:
        x, y = self.approx(20)
        return float(x), float(y)

    def compare(self, other: "AlgebraicPoint2D") -> int:
        """Lexicographic (x, then y) exact comparison."""
        c = self.x_number().compare(other.x_number())
        if c:
            return c
        return self.y_number().compare(other.y_number())

    def same_as(self, other: "AlgebraicPoint2D") -> bool:
        return self.compare(other) == 0

    def exact_str(self) -> tuple[str, str]:
        cf = self.closed_form()
        if cf is not None:
            return str(cf[0]), str(cf[1])
        return str(self.x_number()), str(self.y_number())

    def __repr__(self):
        x, y = self.to_float()
        return f"AlgebraicPoint2D({x:.12g}, {y:.12g})"


def dedup_points(pts: list[AlgebraicPoint2D]) -> list[AlgebraicPoint2D]:
    """Sort by (x, y) exactly and drop duplicates."""
    from functools import cmp_to_key

    out: list[AlgebraicPoint2D] = []
    for p in sorted(pts, key=cmp_to_key(lambda a, b: a.compare(b))):
        if not out or out[-1].compare(p) != 0:
            out.append(p)
    return out
