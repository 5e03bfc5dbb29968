"""Lifting planar cutcurve points to the space curve."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra.bipoly import BiPoly
from .algebra.factor import content_x, primitive_y
from .algebra.points import AlgebraicPoint2D
from .algebra.roots import AlgebraicNumber, dedup_sorted, isolate_real_roots
from .algebra.subres import discriminant_y
from .algebra.surd import QuadSurd
from .algebra.unipoly import squarefree_part
from .cutcurve import CutcurveAnalysis
from .elimination import EliminationBundle, MonicZPair
from .errors import InconsistencyError

S1_FORMULA = "s1-formula"
QUAD_F = "quadratic-on-f"


@dataclass(frozen=True)
class LiftedPoint:
    """A point of the intersection curve in normalized coordinates.

    ``exact`` holds (x, y, z) as :class:`QuadSurd` values when the point
    is known in closed form.
    """

    x: float
    y: float
    z: float
    source: str
    multiplicity: int = 1
    exact: tuple | None = None

    @property
    def xyz(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


def _qs(v) -> QuadSurd:
    return v if isinstance(v, QuadSurd) else QuadSurd(v)


def _surd_lift(pair: MonicZPair, X: QuadSurd, Y: QuadSurd) -> list[LiftedPoint] | None:
    L = _qs(pair.p1(X, Y) - pair.q1(X, Y))
    if L.sign() != 0:
        z = _qs(pair.p0(X, Y) - pair.q0(X, Y)) / (-L)
        for val in (pair.f_at(X, Y, z), pair.g_at(X, Y, z)):
            if _qs(val).sign() != 0:
                raise InconsistencyError("exact lift does not satisfy both quadrics")
        return [LiftedPoint(float(X), float(Y), float(z), S1_FORMULA, 1, (X, Y, z))]
    p1 = _qs(pair.p1(X, Y))
    disc = p1 * p1 - _qs(pair.p0(X, Y)) * 4
    s = disc.sign()
    if s < 0:
        return []
    if s == 0:
        z = p1 * Fraction(-1, 2)
        return [LiftedPoint(float(X), float(Y), float(z), QUAD_F, 2, (X, Y, z))]
    if disc.is_rational() and p1.is_rational() and X.is_rational() and Y.is_rational():
        r = QuadSurd.sqrt(disc.a)
        zs = [(-p1 - r) * Fraction(1, 2), (-p1 + r) * Fraction(1, 2)]
        return [LiftedPoint(float(X), float(Y), float(z), QUAD_F, 1, (X, Y, z)) for z in zs]
    return None  # nested radical: numeric route


def _numeric_quadratic(pair: MonicZPair, x, y, dps: int):
    with mpmath.workdps(dps):
        p1 = pair.p1(x, y)
        disc = p1 * p1 - 4 * pair.p0(x, y)
        tol = mpmath.mpf(10) ** (-(dps // 2))
        if disc < -tol:
            return []
        if abs(disc) <= tol:
            return [(-p1 / 2, 2)]
        r = mpmath.sqrt(disc)
        return [((-p1 - r) / 2, 1), ((-p1 + r) / 2, 1)]


def lift(pt, pair: MonicZPair, dps: int = 40) -> list[LiftedPoint]:
    """Space points above a cutcurve point.

    Off the line p1 = q1 the first subresultant gives a unique z; on the
    line the quadratic f(x, y, z) = 0 is solved (one double or two
    simple roots, none when its discriminant is negative).
    """
    s0 = pair.p0 - pair.q0
    S0 = s0 ** 2 - (pair.p1 - pair.q1) * (pair.p0 * pair.q1 - pair.q0 * pair.p1)
    if isinstance(pt, AlgebraicPoint2D):
        if not pt.satisfies(S0):
            raise ValueError("point is not on the cutcurve")
        cf = pt.closed_form()
        if cf is not None:
            try:
                res = _surd_lift(pair, cf[0], cf[1])
            except ValueError:
                res = None  # radicands of different fields
            if res is not None:
                return res
        on_line = pt.satisfies(pair.p1 - pair.q1)
        x, y = pt.approx(dps)
    else:
        x, y = pt
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            if S0(x, y) != 0:
                raise ValueError("point is not on the cutcurve")
            return _surd_lift(pair, QuadSurd(x), QuadSurd(y)) or []
        with mpmath.workdps(dps):
            x, y = mpmath.mpf(x), mpmath.mpf(y)
            L = pair.p1(x, y) - pair.q1(x, y)
            scale = 1 + abs(x) + abs(y)
            on_line = abs(L) <= mpmath.mpf(10) ** (-(dps // 2)) * scale
    with mpmath.workdps(dps):
        if not on_line:
            z = (pair.p0(x, y) - pair.q0(x, y)) / (pair.q1(x, y) - pair.p1(x, y))
            return [LiftedPoint(float(x), float(y), float(z), S1_FORMULA)]
        return [LiftedPoint(float(x), float(y), float(z), QUAD_F, m)
                for z, m in _numeric_quadratic(pair, x, y, dps)]


def split_vertical(S: BiPoly) -> tuple[BiPoly, list[AlgebraicNumber]]:
    """(S without its x-content, real roots of that content)."""
    c = content_x(S)
    if c.degree <= 0:
        return S, []
    return primitive_y(S), isolate_real_roots(c)


def critical_x_values(analysis: CutcurveAnalysis, bundle: EliminationBundle) -> list[AlgebraicNumber]:
    """Sorted distinct x-values where the fiber structure may change."""
    if bundle.degenerate:
        return []
    S, vertical = split_vertical(bundle.s0_squarefree)
    xs: list[AlgebraicNumber] = list(vertical)
    for sp in analysis.singular:
        xs.append(sp.location.x_number())
    for bp in analysis.boundary.points:
        xs.append(bp.location.x_number())
    if S.deg_y >= 1:
        lc = S.y_coeffs()[-1]
        if lc.degree > 0:
            xs.extend(isolate_real_roots(lc))
        d = discriminant_y(S)
        if not d.is_zero() and d.degree > 0:
            xs.extend(isolate_real_roots(squarefree_part(d)))
    return dedup_sorted(xs)
