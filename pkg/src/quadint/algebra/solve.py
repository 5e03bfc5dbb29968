"""Exact real solutions of a zero-dimensional system F = G = 0 in (x, y)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bipoly import BiPoly
from .factor import gcd_bi
from .points import AlgebraicPoint2D, RatFunc, dedup_points
from .roots import AlgebraicNumber, isolate_real_roots
from .subres import resultant_y, sres_y
from .unipoly import UniPoly, gcd, squarefree_part


@dataclass
class SystemSolution:
    points: list[AlgebraicPoint2D] = field(default_factory=list)
    # nonconstant common factor of the inputs; its points are not listed
    common: BiPoly | None = None

    @property
    def degenerate(self) -> bool:
        return self.common is not None


class _NeedsShear(Exception):
    pass


def _solve_generic(F: BiPoly, G: BiPoly, t: Fraction) -> list[AlgebraicPoint2D]:
    """Solve in sheared coordinates x' = x + t y; return points in (x, y)."""
    if t:
        # F(x' - t y, y)
        sub_x = BiPoly({(1, 0): 1, (0, 1): -t})
        F = F.substitute(sub_x, BiPoly.y())
        G = G.substitute(sub_x, BiPoly.y())
    R = resultant_y(F, G)
    if R.is_zero():
        raise _NeedsShear()
    if R.degree <= 0:
        return []
    Rs = squarefree_part(R)
    s1 = None
    lcF = F.y_coeffs()[-1] if F.deg_y > 0 else None
    lcG = G.y_coeffs()[-1] if G.deg_y > 0 else None
    out = []
    for x0 in isolate_real_roots(Rs):
        if x0.is_rational():
            xv = x0.value
            fx, gx = F.at_x(xv), G.at_x(xv)
            if fx.is_zero() and gx.is_zero():
                raise _NeedsShear()
            h = gcd(fx, gx) if not (fx.is_zero() or gx.is_zero()) else (gx if fx.is_zero() else fx)
            for yv in isolate_real_roots(h):
                Y = RatFunc.identity("u")
                X = RatFunc(UniPoly([xv, -t], "u"))
                out.append(AlgebraicPoint2D(yv, X, Y))
            continue
        if F.deg_y < 1 or G.deg_y < 1:
            # one equation is free of y; its irrational x-root needs a shear
            raise _NeedsShear()
        if x0.sign_of(lcF) == 0 and x0.sign_of(lcG) == 0:
            raise _NeedsShear()
        if s1 is None:
            s1 = sres_y(F, G, 1)
        b, a = s1[0], s1[1]
        if x0.sign_of(a) == 0:
            raise _NeedsShear()
        Y = RatFunc(-b.with_var("u"), a.with_var("u"))
        X = RatFunc(UniPoly([0, 1], "u")) - Y * t if t else RatFunc.identity("u")
        out.append(AlgebraicPoint2D(x0, X, Y))
    return out


_SHEARS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
           Fraction(-2), Fraction(3), Fraction(-1, 3), Fraction(5, 2), Fraction(-7, 3)]


def solve_system(F: BiPoly, G: BiPoly) -> SystemSolution:
    """All real common points of F and G, exact and verified.

    If F and G share a nonconstant factor the result is flagged
    degenerate and holds the real points of the system with that factor
    removed from both sides.
    """
    if F.is_zero() or G.is_zero():
        raise ArithmeticError("solve_system needs nonzero equations")
    g = gcd_bi(F, G)
    common = None
    if not g.is_constant():
        common = g
        F, G = F.exact_div(g), G.exact_div(g)
        if F.is_constant() or G.is_constant():
            return SystemSolution([], common)
    for t in _SHEARS:
        try:
            pts = _solve_generic(F, G, t)
        except _NeedsShear:
            continue
        for p in pts:
            if not (p.satisfies(F) and p.satisfies(G)):
                raise ArithmeticError("solution failed exact verification")
        return SystemSolution(dedup_points(pts), common)
    raise ArithmeticError("no generic shear found for the system")


def real_points_on(F: BiPoly, G: BiPoly) -> list[AlgebraicPoint2D]:
    return solve_system(F, G).points
