"""Closed-form radical parameterizations of the intersection curve.

Available when every irreducible factor of the squarefree cutcurve has
degree at most two in y.  Each branch is x -> (x, y(x), z(x)) on a union
of x-intervals; y is rational or a square root expression in x and z
comes from the first subresultant or, on the line p1 = q1, from the
quadratic formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .algebra.bipoly import BiPoly
from .algebra.factor import factor_in_y
from .algebra.points import RatFunc, eval_bipoly_ratfunc
from .algebra.roots import AlgebraicNumber, dedup_sorted, isolate_real_roots
from .algebra.subres import resultant_y
from .algebra.surd import QuadSurd
from .algebra.unipoly import UniPoly, gcd
from .elimination import EliminationBundle, MonicZPair

_DPS = 30


@dataclass(frozen=True)
class XInterval:
    """Interval of x with optional infinite ends (None)."""

    lo: AlgebraicNumber | None
    hi: AlgebraicNumber | None
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x) -> bool:
        if self.lo is not None:
            c = self.lo.compare(x)
            if c > 0 or (c == 0 and not self.lo_closed):
                return False
        if self.hi is not None:
            c = self.hi.compare(x)
            if c < 0 or (c == 0 and not self.hi_closed):
                return False
        return True

    def contains_float(self, x: float) -> bool:
        if self.lo is not None and (x < float(self.lo) or (x == float(self.lo) and not self.lo_closed)):
            return False
        if self.hi is not None and (x > float(self.hi) or (x == float(self.hi) and not self.hi_closed)):
            return False
        return True

    def __str__(self):
        left = "]-inf" if self.lo is None else ("[" if self.lo_closed else "]") + str(self.lo)
        right = "+inf[" if self.hi is None else str(self.hi) + ("]" if self.hi_closed else "[")
        return f"{left}, {right}"


@dataclass
class ParamBranch:
    """One parameterized component x -> (x, y(x), z(x))."""

    factor: BiPoly
    y_kind: str  # "rational" | "radical"
    z_kind: str  # "s1" | "quadratic"
    intervals: list[XInterval]
    y_sign: int = 0  # radical branches: sign in front of the square root
    z_sign: int = 0  # quadratic lift: sign in front of the square root
    y_rat: RatFunc | None = None
    z_rat: RatFunc | None = None  # s1 lift on a rational y branch
    abc: tuple[UniPoly, UniPoly, UniPoly] | None = None  # radical: A y^2 + B y + C
    pair: MonicZPair | None = field(default=None, repr=False)

    # evaluation ---------------------------------------------------------
    def y_mp(self, x):
        if self.y_kind == "rational":
            return _mp_uni(self.y_rat.num, x) / _mp_uni(self.y_rat.den, x)
        A, B, C = (_mp_uni(p, x) for p in self.abc)
        D = B * B - 4 * A * C
        return (-B + self.y_sign * mpmath.sqrt(max(D, 0))) / (2 * A)

    def z_mp(self, x, y):
        p = self.pair
        if self.z_kind == "s1":
            if self.z_rat is not None:
                return _mp_uni(self.z_rat.num, x) / _mp_uni(self.z_rat.den, x)
            return (_mp_bi(p.p0, x, y) - _mp_bi(p.q0, x, y)) / (_mp_bi(p.q1, x, y) - _mp_bi(p.p1, x, y))
        p1, p0 = _mp_bi(p.p1, x, y), _mp_bi(p.p0, x, y)
        d = p1 * p1 - 4 * p0
        return (-p1 + self.z_sign * mpmath.sqrt(max(d, 0))) / 2

    def evaluate(self, x) -> tuple[float, float, float]:
        """(x, y(x), z(x)) in floating point; x must lie in an interval."""
        with mpmath.workdps(_DPS):
            xm = _to_mp(x)
            y = self.y_mp(xm)
            z = self.z_mp(xm, y)
            return float(xm), float(y), float(z)

    def in_domain(self, x: float) -> bool:
        return any(iv.contains_float(x) for iv in self.intervals)

    # printing -----------------------------------------------------------
    def y_formula(self) -> str:
        if self.y_kind == "rational":
            return str(self.y_rat).replace("u", "x")
        A, B, C = self.abc
        return _sqrt_expr(-B, self.y_sign, B * B - A * C * 4, A * 2)

    def z_formula(self) -> str:
        p = self.pair
        if self.z_kind == "s1":
            if self.z_rat is not None:
                return str(self.z_rat).replace("u", "x")
            return f"({p.p0 - p.q0})/({p.q1 - p.p1})"
        return _sqrt_expr(-p.p1, self.z_sign, p.p1 ** 2 - p.p0 * 4, 2)

    def describe(self) -> dict:
        return {
            "factor": str(self.factor),
            "y": self.y_formula(),
            "z": self.z_formula(),
            "z_at": "y = y(x)" if not (self.z_kind == "s1" and self.z_rat is not None) else "",
            "intervals": [str(iv) for iv in self.intervals],
        }


def _sqrt_expr(b, sign: int, d, den) -> str:
    """Text of (b +- sqrt(d)) / den."""
    root = f"sqrt({d})"
    if sign == 0:
        return str(b * Fraction(1, den))
    if b.is_zero():
        top = root if sign > 0 else f"-{root}"
    else:
        top = f"{b} {'+' if sign > 0 else '-'} {root}"
    if den == 1:
        return top
    return f"({top})/({den})"


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, AlgebraicNumber):
        return x.to_mpf(_DPS)
    return mpmath.mpf(x)


def _mp_uni(p: UniPoly, x):
    acc = mpmath.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _mp_bi(P: BiPoly, x, y):
    acc = mpmath.mpf(0)
    for (i, j), c in P.terms.items():
        acc += mpmath.mpf(c.numerator) / c.denominator * x ** i * y ** j
    return acc


def _reduced(num: UniPoly, den: UniPoly) -> RatFunc:
    if num.is_zero():
        return RatFunc(UniPoly([0], num.var))
    g = gcd(num, den)
    return RatFunc(num.exact_div(g), den.exact_div(g))


def _roots(p: UniPoly) -> list[AlgebraicNumber]:
    if p.is_zero() or p.degree <= 0:
        return []
    return isolate_real_roots(p)


def _sample_between(lo: AlgebraicNumber | None, hi: AlgebraicNumber | None) -> Fraction:
    """A rational point strictly inside (lo, hi)."""
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(int(mpmath.floor(float(hi.lo))) - 1)
    if hi is None:
        return Fraction(int(mpmath.ceil(float(lo.hi))) + 1)
    while not lo.hi < hi.lo:
        lo = lo.refine(lo.width / 4) if not lo.is_rational() else lo
        hi = hi.refine(hi.width / 4) if not hi.is_rational() else hi
    return (lo.hi + hi.lo) / 2


def _pieces(splits: list[AlgebraicNumber]):
    pts = [None] + splits + [None]
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def _merge(kept: list[bool], splits: list[AlgebraicNumber], closed_at) -> list[XInterval]:
    """Intervals from the kept pieces; a split point joins two kept
    neighbours, or closes a single one, when closed_at(point) holds."""
    pieces = _pieces(splits)
    out: list[XInterval] = []
    cur = None
    for i, (lo, hi) in enumerate(pieces):
        if not kept[i]:
            if cur is not None:
                out.append(cur)
                cur = None
            continue
        if cur is None:
            lc = lo is not None and closed_at(lo)
            cur = XInterval(lo, hi, lc, False)
        else:
            # shared split point between two kept pieces
            if closed_at(lo):
                cur = XInterval(cur.lo, hi, cur.lo_closed, False)
            else:
                out.append(cur)
                cur = XInterval(lo, hi, False, False)
        if hi is not None and (i + 1 >= len(kept) or not kept[i + 1]):
            cur = XInterval(cur.lo, cur.hi, cur.lo_closed, closed_at(hi))
    if cur is not None:
        out.append(cur)
    return out


def _is_line_factor(F: BiPoly, line: BiPoly) -> bool:
    if line.is_zero() or line.total_degree != 1:
        return False
    q = F.try_div(line)
    return q is not None and q.is_constant()


def _linear_branches(F: BiPoly, pair: MonicZPair, bundle: EliminationBundle,
                     on_line: bool) -> list[ParamBranch]:
    b, a = F.y_coeffs()[0], F.y_coeffs()[1]
    Y = _reduced(-b.with_var("u"), a.with_var("u"))
    X = RatFunc.identity("u")
    if not on_line:
        n1, d1 = eval_bipoly_ratfunc(pair.p0 - pair.q0, X, Y)
        n2, d2 = eval_bipoly_ratfunc(pair.q1 - pair.p1, X, Y)
        Z = _reduced(n1 * d2, d1 * n2)
        splits = dedup_sorted(_roots(a) + _roots(Z.den.with_var("x")))
        kept = [True] * (len(splits) + 1)
        ivs = _merge(kept, splits, lambda p: False)
        return [ParamBranch(F, "rational", "s1", ivs, y_rat=Y, z_rat=Z, pair=pair)]
    # lift by the quadratic formula where delta1(x, y(x)) >= 0
    rn, rd = eval_bipoly_ratfunc(bundle.delta1, X, Y)
    R = (rn * rd).with_var("x")
    ax = a.with_var("x")
    if R.is_zero():
        # delta1 vanishes along the line: a single double sheet
        splits = dedup_sorted(_roots(ax))
        ivs = _merge([True] * (len(splits) + 1), splits, lambda p: False)
        return [ParamBranch(F, "rational", "quadratic", ivs, z_sign=0, y_rat=Y, pair=pair)]
    splits = dedup_sorted(_roots(R) + _roots(ax))
    kept = [R.sign_at(_sample_between(lo, hi)) > 0 for lo, hi in _pieces(splits)]

    def closed(p: AlgebraicNumber) -> bool:
        return p.sign_of(ax) != 0 and p.sign_of(R) == 0

    ivs = _merge(kept, splits, closed)
    if not ivs:
        return []
    return [ParamBranch(F, "rational", "quadratic", ivs, z_sign=s, y_rat=Y, pair=pair)
            for s in (1, -1)]


def _quadratic_branches(F: BiPoly, pair: MonicZPair, bundle: EliminationBundle,
                        conic_case: bool) -> list[ParamBranch]:
    C, B, A = (c.with_var("x") for c in F.y_coeffs())
    D = B * B - A * C * 4
    extra = bundle.delta1 if conic_case else bundle.line
    Rx = resultant_y(F, extra)
    double = conic_case and Rx.is_zero()  # the factor divides delta1
    splits = dedup_sorted(_roots(D) + _roots(A) + ([] if double else _roots(Rx)))
    out = []
    for ys in (1, -1):
        zs_list = (1, -1) if conic_case and not double else (0,)
        for zs in zs_list:
            kept = []
            for lo, hi in _pieces(splits):
                xq = _sample_between(lo, hi)
                dq = D(xq)
                if dq <= 0:
                    kept.append(False)
                    continue
                aq = A(xq)
                yq = (QuadSurd.sqrt(dq) * Fraction(ys) - B(xq)) * (1 / (2 * aq))
                if conic_case and not double:
                    v = bundle.delta1(QuadSurd(xq), yq)
                    v = v if isinstance(v, QuadSurd) else QuadSurd(v)
                    kept.append(v.sign() > 0)
                else:
                    kept.append(True)
            br = ParamBranch(F, "radical", "quadratic" if conic_case else "s1", [],
                             y_sign=ys, z_sign=zs, abc=(A, B, C), pair=pair)

            def closed(p: AlgebraicNumber, br=br) -> bool:
                if p.sign_of(A) == 0 or p.sign_of(D) < 0:
                    return False
                with mpmath.workdps(_DPS):
                    xm = p.to_mpf(_DPS)
                    ym = br.y_mp(xm)
                    tol = mpmath.mpf(10) ** (-(_DPS // 2))
                    if double:
                        return True
                    if conic_case:
                        return _mp_bi(bundle.delta1, xm, ym) >= -tol
                    return abs(_mp_bi(bundle.line, xm, ym)) > tol

            br.intervals = _merge(kept, splits, closed)
            if br.intervals:
                out.append(br)
    return out


@dataclass
class Parameterization:
    branches: list[ParamBranch]
    factors: list[BiPoly]


def try_parameterize(bundle: EliminationBundle, pair: MonicZPair) -> Parameterization | None:
    """Closed-form branches, or None when some factor of the squarefree
    cutcurve has degree three or more in y (or is a vertical line)."""
    if bundle.degenerate:
        return None
    S = bundle.s0_squarefree
    if S.is_constant():
        return Parameterization([], [])
    factors = []
    for f in factor_in_y(S):
        if not any(f == g for g in factors):
            factors.append(f)
    if any(f.deg_y >= 3 or f.deg_y == 0 for f in factors):
        return None
    conic_case = bundle.line.is_zero()
    branches: list[ParamBranch] = []
    for F in factors:
        if F.deg_y == 1:
            on_line = conic_case or _is_line_factor(F, bundle.line)
            branches.extend(_linear_branches(F, pair, bundle, on_line))
        else:
            branches.extend(_quadratic_branches(F, pair, bundle, conic_case))
    return Parameterization(branches, factors)
