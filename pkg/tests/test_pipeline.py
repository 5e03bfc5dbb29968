import math
from fractions import Fraction

import pytest

from oracles import load
from quadint import Quadric, discretize, intersect, residual
from quadint.pipeline import EMPTY, IDENTICAL, SHARED

ALL = ["sphere", "ellipsoids", "paraboloids", "hyperboloid", "tangent"]


def Q(*c):
    return Quadric.from_coefficients(list(c))


def all_points(res):
    return [p for b in res.branches for p in b.points] + list(res.isolated_points)


def near(pts, x, y, tol=1e-6):
    return any(abs(p.x - x) < tol and abs(p.y - y) < tol for p in pts)


def test_tangent_ellipsoids_give_oval_and_isolated_point():
    res = intersect(*load("tangent"))
    assert res.mode == "discretized" and not res.flags
    assert len(res.branches) == 1 and res.branches[0].closed
    assert [p.xyz for p in res.isolated_points] == [(1.0, 0.0, 0.0)]


@pytest.mark.parametrize("scale", [Fraction(1), Fraction(-3), Fraction(1, 2)])
def test_identical_quadrics(scale):
    e1, _ = load("sphere")
    e2 = Quadric.from_coefficients([c * scale for c in e1.coefficients()])
    res = intersect(e1, e2)
    assert res.flags == [IDENTICAL] and res.mode == "none" and res.branches == []


def test_ellipsoids_branches_reach_boundary_points():
    res = intersect(*load("ellipsoids"))
    assert res.mode == "discretized"
    assert res.branches and not any(b.closed for b in res.branches)
    pts = [p for b in res.branches for p in b.points]
    for x, y in ((-0.5989698028, -0.6502822952), (-2.336955328, -6.163216205),
                 (21.765280490, -32.199082657)):
        assert near(pts, x, y)
    (on_line,) = [s for s in res.singular_lifted if s.point.kind == "on-line"]
    assert len(on_line.lifted) == 2
    za, zb = sorted(p.z for p in on_line.lifted)
    assert za < zb
    for p in on_line.lifted:
        assert residual(*load("ellipsoids"), p.xyz) <= 1e-12


def test_shared_component():
    # (z - x)(z - y) and (z - x)(z + y)
    e1 = Q(0, 0, 1, 1, -1, -1, 0, 0, 0, 0)
    e2 = Q(0, 0, 1, -1, -1, 1, 0, 0, 0, 0)
    res = intersect(e1, e2)
    assert SHARED in res.flags and res.mode == "none" and res.branches == []


def test_disjoint_spheres_are_empty():
    e1 = Q(1, 1, 1, 0, 0, 0, 0, 0, 0, -1)
    e2 = Q(1, 1, 1, 0, 0, 0, -10, 0, 0, 24)
    res = intersect(e1, e2)
    assert EMPTY in res.flags and res.branches == [] and res.isolated_points == []


def test_forced_closed_form_falls_back():
    res = intersect(*load("hyperboloid"), mode="parameterize")
    assert res.mode == "discretized" and res.branches
    assert any("discretizing instead" in w for w in res.warnings)


def test_forced_discretization_of_paraboloids():
    res = intersect(*load("paraboloids"), mode="discretize")
    assert res.mode == "discretized" and all(b.kind == "polyline" for b in res.branches)


def test_unknown_mode():
    with pytest.raises(ValueError):
        intersect(*load("sphere"), mode="fast")


@pytest.mark.parametrize("key", ["tangent", "hyperboloid"])
def test_samples_change_density_only(key):
    a = intersect(*load(key), samples=10)
    b = intersect(*load(key), samples=30)
    assert len(a.branches) == len(b.branches)
    assert [x.closed for x in a.branches] == [x.closed for x in b.branches]
    assert sum(len(x.points) for x in b.branches) > sum(len(x.points) for x in a.branches)
    assert [p.xyz for p in a.isolated_points] == [p.xyz for p in b.isolated_points]


def test_parameterized_result_can_be_discretized():
    res = intersect(*load("paraboloids"))
    assert res.mode == "parameterized"
    lines = discretize(res, 15)
    assert lines and all(b.kind == "polyline" for b in lines)
    e1, e2 = load("paraboloids")
    assert max(residual(e1, e2, p.xyz) for b in lines for p in b.points) <= 1e-9


def test_transformed_scene_residuals():
    e1 = Q(1, 1, 0, 0, 0, 0, 0, 0, 1, 0)  # x^2 + y^2 + z
    e2 = Q(1, 1, 1, 0, 0, 0, 0, 0, 0, -4)
    for mode in ("auto", "discretize"):
        res = intersect(e1, e2, mode=mode)
        assert not res.scene.is_identity
        if res.mode == "parameterized":
            for b in res.branches:
                for iv in b.param.intervals:
                    lo = float(iv.lo) if iv.lo is not None else -3.0
                    hi = float(iv.hi) if iv.hi is not None else 3.0
                    for k in range(1, 10):
                        t = lo + (hi - lo) * k / 10
                        if b.param.in_domain(t):
                            assert residual(e1, e2, b.evaluate(t)) <= 1e-9
        else:
            pts = all_points(res)
            assert pts and max(residual(e1, e2, p.xyz) for p in pts) <= 1e-9


def test_two_axes_with_a_double_sheet():
    # z^2 + xy and z^2 - xy meet in the x and y axes
    e1, e2 = Q(0, 0, 1, 1, 0, 0, 0, 0, 0, 0), Q(0, 0, 1, -1, 0, 0, 0, 0, 0, 0)
    res = intersect(e1, e2)
    assert not res.flags and len(res.branches) == 4
    pts = all_points(res)
    assert all(p.z == 0 and (p.x == 0 or p.y == 0) for p in pts)
    assert near(pts, -1.0, 0.0) and near(pts, 0.0, 0.975)


def test_double_sheet_line_in_closed_form():
    # z^2 + y and z^2 - y meet in the x axis
    e1, e2 = Q(0, 0, 1, 0, 0, 0, 0, 1, 0, 0), Q(0, 0, 1, 0, 0, 0, 0, -1, 0, 0)
    res = intersect(e1, e2)
    assert res.mode == "parameterized" and len(res.branches) == 1
    d = res.branches[0].param.describe()
    assert (d["y"], d["z"], d["intervals"]) == ("0", "0", ["]-inf, +inf["])
    assert res.branches[0].evaluate(2.5) == (2.5, 0.0, 0.0)


@pytest.mark.parametrize("key", ALL)
def test_results_are_finite(key):
    res = intersect(*load(key))
    if res.mode == "discretized":
        for p in all_points(res):
            assert all(math.isfinite(v) for v in p.xyz)


def test_vertical_arms_reach_the_node():
    # z^2 + xy - yz and z^2 - xy + yz: the axes again, with x = 0 off the line
    e1, e2 = Q(0, 0, 1, 1, 0, -1, 0, 0, 0, 0), Q(0, 0, 1, -1, 0, 1, 0, 0, 0, 0)
    res = intersect(e1, e2)
    assert len(res.branches) == 4
    for b in res.branches:
        ends = (b.points[0].xyz, b.points[-1].xyz)
        assert (0.0, 0.0, 0.0) in ends
        assert max(residual(e1, e2, p.xyz) for p in b.points) == 0
