from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import pair_from_sym, same_number, scene, to_sym, x, y, z
from quadint.algebra.points import AlgebraicPoint2D
from quadint.cutcurve import (AdmissibleRegion, analyze_cutcurve, classify_vertex,
                              no_common_offline_check, region_contains, singular_on_line,
                              silhouette_cut_points, tangential_singular, tau)
from quadint.elimination import compute_bundle, grad_s0
from quadint.lifting import lift

ALL = ["sphere", "ellipsoids", "paraboloids", "hyperboloid", "tangent"]
sqrt = sp.sqrt


def analysis(key):
    s, b = scene(key)
    return s.monic, b, analyze_cutcurve(b, s.monic)


def sym_point(p: AlgebraicPoint2D):
    return p.x_number(), p.y_number()


def matches(p: AlgebraicPoint2D, ex, ey) -> bool:
    a, b = sym_point(p)
    return same_number(a, ex) and same_number(b, ey)


# --- region -----------------------------------------------------------------

def test_region_membership():
    _, b = scene("sphere")
    region = AdmissibleRegion(b.delta1, b.delta2)
    assert region_contains(region, (0, 0)) == "boundary"
    assert region_contains(region, (100, 100)) == "no"
    assert region_contains(region, (-1, 0)) == "yes"


def test_isolated_on_line_point_is_outside():
    pair, b, an = analysis("ellipsoids")
    ax = sp.Rational(9, 104) + sqrt(10345) / 520
    a_pt = [s for s in an.on_line if matches(s.location, ax, 1 - 6 * ax)]
    assert len(a_pt) == 1 and a_pt[0].region_status == "no"


# --- singular points on the line ---------------------------------------------

def test_line_inside_cutcurve():
    _, b = scene("paraboloids")
    pts, line_in = singular_on_line(b)
    assert line_in
    assert tau(b).is_zero()
    # the other component crosses the line at (-1/2, -1/2)
    assert len(pts) == 1
    assert matches(pts[0].location, -sp.Rational(1, 2), -sp.Rational(1, 2))


def test_on_line_points_first_ellipsoids():
    _, b = scene("ellipsoids")
    pts, line_in = singular_on_line(b)
    assert not line_in
    sols = sp.solve([76 * x ** 2 + 24 * x * y - 27 * y ** 2 + 12 * x + 30 * y + 29, 6 * x + y - 1], [x, y])
    assert len(pts) == len(sols) == 2
    for p in pts:
        assert any(matches(p.location, sx, sy) for sx, sy in sols)


def test_on_line_points_tangent_ellipsoids():
    _, b = scene("tangent")
    pts, _ = singular_on_line(b)
    r = sqrt(95)
    expect = [(sp.Rational(3, 14) - 11 * r / 70, 11 * r / 95), (sp.Rational(3, 14) + 11 * r / 70, -11 * r / 95)]
    assert len(pts) == 2
    for p in pts:
        assert any(matches(p.location, ex, ey) for ex, ey in expect)
        assert p.region_status == "no"


@pytest.mark.parametrize("key", ["ellipsoids", "hyperboloid", "tangent"])
def test_on_line_points_equal_substitution_oracle(key):
    _, b = scene(key)
    pts, line_in = singular_on_line(b)
    assert not line_in
    L = to_sym(b.line)
    ysol = sp.solve(L, y)[0]
    h = sp.expand((to_sym(b.delta1) - to_sym(b.delta2)).subs(y, ysol))
    xs = [r for r in sp.solve(h, x) if r.is_real]
    assert len(pts) == len(xs)
    for p in pts:
        assert any(matches(p.location, r, ysol.subs(x, r)) for r in xs)


def test_tau_examples():
    _, b = scene("tangent")
    t = tau(b)
    assert t.degree == 2
    roots = sp.solve(to_sym(t), x)
    expect = {sp.Rational(3, 14) - 11 * sqrt(95) / 70, sp.Rational(3, 14) + 11 * sqrt(95) / 70}
    assert {sp.nsimplify(r) for r in roots} == {sp.nsimplify(e) for e in expect}
    vertical = compute_bundle(pair_from_sym(x, y ** 2, sp.Integer(2), x * y))
    assert to_sym(tau(vertical)) == x - 2


# --- tangential points ----------------------------------------------------------

def test_tangent_point_of_two_ellipsoids():
    _, b = scene("tangent")
    tang = tangential_singular(b)
    assert len(tang) == 1
    assert tang[0].location.is_rational()
    assert (tang[0].location.x_number().value, tang[0].location.y_number().value) == (1, 0)
    assert tang[0].in_region


def test_paraboloids_have_no_tangential_points():
    _, b = scene("paraboloids")
    assert tangential_singular(b) == []


def test_disjoint_spheres():
    pair = pair_from_sym(sp.Integer(0), x ** 2 + y ** 2 - 1, sp.Integer(0), (x - 5) ** 2 + y ** 2 - 1)
    b = compute_bundle(pair)
    assert tangential_singular(b) == []


def test_touching_spheres_give_isolated_tangential_point():
    pair = pair_from_sym(sp.Integer(0), x ** 2 + y ** 2 - 1, sp.Integer(-4), x ** 2 + y ** 2 + 3)
    b = compute_bundle(pair)
    assert to_sym(b.s0) == 16 * (x ** 2 + y ** 2)
    tang = tangential_singular(b)
    assert len(tang) == 1 and matches(tang[0].location, 0, 0)
    (lp,) = lift(tang[0].location, pair)
    assert lp.exact is not None and tuple(lp.exact) == (0, 0, 1)


@pytest.mark.parametrize("key", ALL)
def test_singular_point_invariants(key):
    pair, b, an = analysis(key)
    S = b.s0
    gx, gy = grad_s0(b)
    for s in an.on_line:
        loc = s.location
        assert loc.satisfies(S) and loc.satisfies(b.line)
        assert loc.satisfies(pair.p0 - pair.q0)
        assert loc.satisfies(gx) and loc.satisfies(gy)
    for s in an.tangential:
        loc = s.location
        assert loc.satisfies(S) and loc.satisfies(gx) and loc.satisfies(gy)
        assert not loc.satisfies(b.line)


def test_tangent_planes_agree_at_tangential_point():
    pair, b, an = analysis("tangent")
    (t,) = an.tangential
    (lp,) = lift(t.location, pair)
    X, Y, Z = (Fraction(v.a) for v in lp.exact)
    assert pair.f_at(X, Y, Z) == 0 and pair.g_at(X, Y, Z) == 0
    f = z ** 2 + to_sym(pair.p1) * z + to_sym(pair.p0)
    g = z ** 2 + to_sym(pair.q1) * z + to_sym(pair.q0)
    at = {x: X, y: Y, z: Z}
    gf = sp.Matrix([sp.diff(f, v).subs(at) for v in (x, y, z)])
    gg = sp.Matrix([sp.diff(g, v).subs(at) for v in (x, y, z)])
    assert gf.cross(gg) == sp.zeros(3, 1)


# --- boundary points -------------------------------------------------------------

def _as_set(points):
    return {(p.location.x_number().value, p.location.y_number().value) for p in points}


def test_paraboloid_silhouette_points():
    pair, b, an = analysis("paraboloids")
    by = {1: [], 2: []}
    for p in an.boundary.points:
        by[p.silhouette].append(p)
    sil = {1: to_sym(b.delta1), 2: to_sym(b.delta2)}
    first = next(i for i in (1, 2) if sil[i] == y ** 2 - 4 * x)
    second = 3 - first
    assert sil[second] == x ** 2 - 4 * y
    assert _as_set(by[first]) == {(0, 0), (1, -2), (4, 4)}
    assert _as_set(by[second]) == {(-2, 1), (0, 0), (4, 4)}


def test_two_ellipsoid_silhouette_points():
    pair, b, an = analysis("tangent")
    got = {i: sorted(p.location.to_float() for p in an.boundary.points if p.silhouette == i)
           for i in (1, 2)}
    d_e = sorted([(-1.310086292, 1.116297338), (-1.032926046, -0.320076179)])
    f_g = sorted([(-1.310059433, 1.116308957), (0.4229961827, -1.105788551)])
    for want, have in ((d_e, got[1]), (f_g, got[2])):
        assert len(have) == 2
        for (wx, wy), (hx, hy) in zip(want, have):
            assert abs(wx - hx) < 1e-6 and abs(wy - hy) < 1e-6


@pytest.mark.parametrize("key", ALL)
def test_boundary_point_characterizations(key):
    pair, b, an = analysis(key)
    for p in an.boundary.points:
        own, other = (b.delta1, b.delta2) if p.silhouette == 1 else (b.delta2, b.delta1)
        assert p.location.satisfies(b.s0)
        assert p.location.satisfies(own)
        assert p.location.satisfies(other - b.line ** 2)


def test_region_vertices():
    pair, b, an = analysis("paraboloids")
    O, C = AlgebraicPoint2D.rational(0, 0), AlgebraicPoint2D.rational(4, 4)
    D = AlgebraicPoint2D.rational(Fraction(-1, 2), Fraction(-1, 2))
    assert classify_vertex(b, O) and classify_vertex(b, C)
    assert O.satisfies(b.line) and C.satisfies(b.line)
    assert not classify_vertex(b, D)
    assert not classify_vertex(b, AlgebraicPoint2D.rational(1, -2))
    assert {(v.x_number().value, v.y_number().value) for v in an.vertices} == {(0, 0), (4, 4)}


@pytest.mark.parametrize("key", ALL)
def test_vertices_lie_on_the_line(key):
    _, b, an = analysis(key)
    for v in an.vertices:
        assert v.satisfies(b.s0) and v.satisfies(b.delta1) and v.satisfies(b.delta2)
        assert v.satisfies(b.line)
    assert no_common_offline_check(b)


small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@given(st.lists(small, min_size=12, max_size=12))
@settings(max_examples=25, deadline=None)
def test_no_common_offline_point_on_random_pairs(c):
    pair = pair_from_sym(c[0] * x + c[1] * y + c[2], c[3] * x ** 2 + c[4] * y ** 2 + c[5],
                         c[6] * x + c[7] * y + c[8], c[9] * x * y + c[10] * x + c[11])
    b = compute_bundle(pair)
    if b.degenerate:
        return
    assert no_common_offline_check(b)
    for p in silhouette_cut_points(b, pair).points:
        assert p.location.satisfies(b.s0)
