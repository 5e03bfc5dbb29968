"""Analysis of the projected curve: region, singular and boundary points."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.bipoly import BiPoly
from .algebra.points import AlgebraicPoint2D, RatFunc, dedup_points
from .algebra.roots import isolate_real_roots
from .algebra.solve import solve_system
from .algebra.subres import sres_y
from .algebra.unipoly import UniPoly, gcd, gcd_many, squarefree_part
from .elimination import EliminationBundle, MonicZPair
from .errors import InconsistencyError

YES, NO, BOUNDARY = "yes", "no", "boundary"


@dataclass(frozen=True)
class AdmissibleRegion:
    """{delta1 >= 0 and delta2 >= 0}."""

    delta1: BiPoly
    delta2: BiPoly

    def signs(self, pt) -> tuple[int, int]:
        if isinstance(pt, AlgebraicPoint2D):
            return pt.sign_at(self.delta1), pt.sign_at(self.delta2)
        x, y = Fraction(pt[0]), Fraction(pt[1])
        a, b = self.delta1(x, y), self.delta2(x, y)
        return (a > 0) - (a < 0), (b > 0) - (b < 0)

    def contains_float(self, x: float, y: float, tol: float = 0.0) -> bool:
        return self.delta1.eval_float(x, y) >= -tol and self.delta2.eval_float(x, y) >= -tol


def region_contains(region: AdmissibleRegion, pt) -> str:
    """'yes', 'no' or 'boundary' (some discriminant exactly zero)."""
    s1, s2 = region.signs(pt)
    if s1 < 0 or s2 < 0:
        return NO
    if s1 == 0 or s2 == 0:
        return BOUNDARY
    return YES


@dataclass(frozen=True)
class SingularPoint:
    location: AlgebraicPoint2D
    kind: str  # "on-line" | "tangential" | "region-vertex"
    region_status: str
    lift_strategy: str  # "quadratic-formula" | "s1-formula"

    @property
    def in_region(self) -> bool:
        return self.region_status != NO


@dataclass(frozen=True)
class BoundaryPoint:
    location: AlgebraicPoint2D
    silhouette: int  # 1 or 2

    @property
    def is_vertex(self) -> bool:
        return False


def _line_parametrization(line: BiPoly):
    """(X, Y) rational functions of a parameter u covering line = 0, or
    None when the line is constant."""
    a, b, c = line.coeff(1, 0), line.coeff(0, 1), line.coeff(0, 0)
    if b != 0:
        # u = x, y = -(a x + c) / b
        return RatFunc.identity("u"), RatFunc(UniPoly([-c / b, -a / b], "u"))
    if a != 0:
        return RatFunc.const(-c / a, "u"), RatFunc.identity("u")
    return None


def _restrict_to_line(P: BiPoly, line: BiPoly) -> UniPoly | None:
    """P along the line as a polynomial in its parameter."""
    par = _line_parametrization(line)
    if par is None:
        return None
    X, Y = par
    if X.is_identity():
        sub = P.substitute(BiPoly.x(), BiPoly.from_uni(Y.num.with_var("x")))
        return sub.to_uni("x")
    sub = P.substitute(BiPoly.constant(X.num[0]), BiPoly.x())
    return sub.to_uni("x")


def singular_on_line(bundle: EliminationBundle, region: AdmissibleRegion | None = None):
    """Singular points of the cutcurve on p1 = q1.

    Returns (points, line_in_cutcurve).  The points are the real common
    zeros of the line and delta1 - delta2.
    """
    line = bundle.line
    if line.is_zero():
        raise ValueError("p1 - q1 vanishes identically; use the conic path")
    region = region or AdmissibleRegion(bundle.delta1, bundle.delta2)
    par = _line_parametrization(line)
    if par is None:
        return [], False
    h = _restrict_to_line(bundle.delta1 - bundle.delta2, line)
    X, Y = par
    pts = []
    if h.is_zero():
        # the line is a component; its singular points are where the
        # other components cross it
        rest = bundle.s0_squarefree.try_div(line)
        r = _restrict_to_line(rest, line) if rest is not None else None
        if r is None or r.is_zero() or r.degree <= 0:
            return [], True
        S = bundle.s0_squarefree
        for u in isolate_real_roots(squarefree_part(r)):
            loc = AlgebraicPoint2D(u, X, Y)
            if not _is_singular(loc, S, S.diff("x"), S.diff("y")):
                raise InconsistencyError("crossing with the line is not singular")
            pts.append(SingularPoint(loc, "on-line", region_contains(region, loc),
                                     "quadratic-formula"))
        return pts, True
    for u in isolate_real_roots(h) if h.degree > 0 else []:
        loc = AlgebraicPoint2D(u, X, Y)
        for P in (bundle.s0, bundle.s0.diff("x"), bundle.s0.diff("y")):
            if not loc.satisfies(P):
                raise InconsistencyError("on-line singular point fails S0 = grad S0 = 0")
        pts.append(SingularPoint(loc, "on-line", region_contains(region, loc), "quadratic-formula"))
    return pts, False


def tau(bundle: EliminationBundle) -> UniPoly:
    """x-coordinates of the singular points on the line as a polynomial.

    Zero polynomial when the whole line lies on the cutcurve; 1 when
    p1 - q1 is a nonzero constant.
    """
    line = bundle.line
    if line.is_zero():
        raise ValueError("p1 - q1 vanishes identically")
    if line.deg_y == 1:
        h = _restrict_to_line(bundle.delta1 - bundle.delta2, line)
        if h.is_zero():
            return h
        return squarefree_part(h)
    if line.deg_x == 1:
        return line.to_uni("x")
    return UniPoly([1])


@dataclass
class TangentialData:
    """Intermediate polynomials of the subresultant construction."""

    U0: UniPoly | None = None
    U1: tuple[UniPoly, UniPoly] | None = None  # (U10, U11)
    V0: UniPoly | None = None
    V1: tuple[UniPoly, UniPoly] | None = None
    W: UniPoly | None = None
    G: UniPoly | None = None  # gcd(W, U0, V0)
    omega: UniPoly | None = None
    used_fallback: bool = False


def _is_singular(pt: AlgebraicPoint2D, S: BiPoly, Sx: BiPoly, Sy: BiPoly) -> bool:
    return pt.satisfies(S) and pt.satisfies(Sx) and pt.satisfies(Sy)


def singular_points_direct(S: BiPoly) -> list[AlgebraicPoint2D]:
    """Real singular points of S = 0 by solving two of the three
    equations and filtering with the third."""
    Sx, Sy = S.diff("x"), S.diff("y")
    for F, G in ((Sx, Sy), (S, Sx), (S, Sy)):
        if F.is_zero() or G.is_zero():
            continue
        sol = solve_system(F, G)
        if sol.degenerate:
            continue
        return [p for p in sol.points if _is_singular(p, S, Sx, Sy)]
    raise InconsistencyError("could not isolate the singular points")


def _tangential_candidates(S: BiPoly, td: TangentialData) -> list[AlgebraicPoint2D] | None:
    """Subresultant route; None when some degree degenerates."""
    Sx, Sy = S.diff("x"), S.diff("y")
    if S.deg_y < 1 or Sx.deg_y < 1 or Sy.deg_y < 1:
        return None
    U = sres_y(S, Sx, 0)[0]
    V = sres_y(S, Sy, 0)[0]
    if U.is_zero() or V.is_zero():
        return None
    td.U1 = tuple(sres_y(S, Sx, 1))
    td.V1 = tuple(sres_y(S, Sy, 1))
    U10, U11 = td.U1
    V10, V11 = td.V1
    wr = U10 * V11 - V10 * U11
    if wr.is_zero():
        return None
    td.U0 = squarefree_part(U) if U.degree > 0 else UniPoly([1])
    td.V0 = squarefree_part(V) if V.degree > 0 else UniPoly([1])
    td.W = squarefree_part(wr) if wr.degree > 0 else UniPoly([1])
    td.G = gcd_many([td.W, td.U0, td.V0])
    pts = []
    for x0 in isolate_real_roots(td.G) if td.G.degree > 0 else []:
        su, sv = x0.sign_of(U11), x0.sign_of(V11)
        cands = []
        if su != 0:
            cands.append(RatFunc(-U10.with_var("u"), U11.with_var("u")))
        if sv != 0:
            cands.append(RatFunc(-V10.with_var("u"), V11.with_var("u")))
        if not cands:
            return None
        locs = [AlgebraicPoint2D.on_x(x0, Y) for Y in cands]
        good = [p for p in locs if _is_singular(p, S, Sx, Sy)]
        if len(good) == 2 and not good[0].same_as(good[1]):
            # two singular points over one x: the subresultant cannot
            # separate them
            return None
        pts.extend(good[:1])
    return pts


def tangential_singular(bundle: EliminationBundle, region: AdmissibleRegion | None = None,
                        data: TangentialData | None = None) -> list[SingularPoint]:
    """Singular points of the cutcurve off the line p1 = q1, verified
    exactly.  These are projections of tangential intersections."""
    if bundle.degenerate:
        raise ValueError("degenerate bundle")
    region = region or AdmissibleRegion(bundle.delta1, bundle.delta2)
    td = data if data is not None else TangentialData()
    S = bundle.s0_squarefree
    if S.total_degree < 2:
        return []
    cands = _tangential_candidates(S, td)
    if cands is None:
        td.used_fallback = True
        cands = singular_points_direct(S)
    if not bundle.line.is_zero() and td.G is not None:
        t = tau(bundle)
        td.omega = td.G.exact_div(gcd(td.G, t)) if not t.is_zero() else td.G
    out = []
    for loc in dedup_points(cands):
        if bundle.line.is_zero() or loc.satisfies(bundle.line):
            continue
        out.append(SingularPoint(loc, "tangential", region_contains(region, loc), "s1-formula"))
    return out


def prop1_system(bundle_pair: MonicZPair) -> BiPoly:
    """2 (p0 + q0) - p1 q1, which cuts the silhouettes at cutcurve points."""
    p = bundle_pair
    return (p.p0 + p.q0) * 2 - p.p1 * p.q1


@dataclass
class BoundaryResult:
    points: list[BoundaryPoint] = field(default_factory=list)
    # silhouettes sharing a whole arc with the cutcurve
    degenerate: list[int] = field(default_factory=list)


def silhouette_cut_points(bundle: EliminationBundle, pair: MonicZPair) -> BoundaryResult:
    """Points where the cutcurve meets each silhouette."""
    C = prop1_system(pair)
    res = BoundaryResult()
    for i, D in ((1, bundle.delta1), (2, bundle.delta2)):
        if D.is_zero() or D.is_constant():
            if D.is_zero():
                res.degenerate.append(i)
            continue
        if C.is_zero():
            res.degenerate.append(i)
            continue
        sol = solve_system(C, D)
        if sol.degenerate:
            res.degenerate.append(i)
        for p in sol.points:
            if not p.satisfies(bundle.s0):
                raise InconsistencyError("silhouette point off the cutcurve")
            res.points.append(BoundaryPoint(p, i))
    return res


def classify_vertex(bundle: EliminationBundle, pt: AlgebraicPoint2D) -> bool:
    """True when both discriminants vanish at pt (a corner of the region on
    the cutcurve); such points must lie on p1 = q1."""
    if not (pt.satisfies(bundle.delta1) and pt.satisfies(bundle.delta2)):
        return False
    if not pt.satisfies(bundle.line):
        raise InconsistencyError("region vertex on the cutcurve off the line p1 = q1")
    return True


def no_common_offline_check(bundle: EliminationBundle) -> bool:
    """Every real point with S0 = delta1 = delta2 = 0 lies on p1 = q1."""
    d1, d2 = bundle.delta1, bundle.delta2
    if d1.is_constant() or d2.is_constant():
        return True
    sol = solve_system(d1, d2)
    for p in sol.points:
        if p.satisfies(bundle.s0) and not p.satisfies(bundle.line):
            return False
    if sol.common is not None:
        # shared silhouette arc: test S0 and the line along it generically
        pass
    return True


@dataclass
class CutcurveAnalysis:
    region: AdmissibleRegion
    on_line: list[SingularPoint]
    line_in_cutcurve: bool
    tau: UniPoly | None
    tangential: list[SingularPoint]
    tangential_data: TangentialData
    boundary: BoundaryResult
    vertices: list[AlgebraicPoint2D]
    conic_case: bool  # p1 == q1 identically: the cutcurve is p0 - q0 = 0
    residual: BiPoly  # squarefree cutcurve without the line component

    @property
    def singular(self) -> list[SingularPoint]:
        return self.on_line + self.tangential


def analyze_cutcurve(bundle: EliminationBundle, pair: MonicZPair) -> CutcurveAnalysis:
    region = AdmissibleRegion(bundle.delta1, bundle.delta2)
    conic_case = bundle.line.is_zero()
    if conic_case:
        # every cutcurve point lies on p1 = q1 and lifts by the quadratic formula
        S = bundle.s0_squarefree
        sing = singular_points_direct(S) if S.total_degree >= 2 else []
        on_line = [SingularPoint(p, "on-line", region_contains(region, p), "quadratic-formula")
                   for p in sing]
        line_in = False
        t = None
    else:
        on_line, line_in = singular_on_line(bundle, region)
        t = tau(bundle)
    td = TangentialData()
    tang = tangential_singular(bundle, region, td)
    boundary = silhouette_cut_points(bundle, pair)
    verts = []
    for bp in boundary.points:
        if classify_vertex(bundle, bp.location):
            verts.append(bp.location)
    verts = dedup_points(verts)
    residual = bundle.s0_squarefree
    if line_in:
        q = residual.try_div(bundle.line)
        if q is not None:
            residual = q
    return CutcurveAnalysis(region, on_line, line_in, t, tang, td, boundary, verts,
                            conic_case, residual)
