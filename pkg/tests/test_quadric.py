from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import load, to_sym, x, y, z
from quadint.algebra.bipoly import BiPoly
from quadint.errors import UnsupportedCaseError
from quadint.quadric import (IDENTITY3, MixedPair, NormalizedScene, Quadric, map_back,
                             normalize, project_mixed)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
points3 = st.tuples(small, small, small)


def quadric_coeffs():
    return st.lists(st.integers(-4, 4), min_size=10, max_size=10).filter(
        lambda c: any(c[:6]))


def test_coefficients_and_matrix_agree():
    q = Quadric.from_coefficients([1, 2, 3, 4, 5, 6, 7, 8, 9, 10])
    assert q.coefficients() == [Fraction(v) for v in range(1, 11)]
    assert q.A[0][1] == 2 and q.A[2][3] == Fraction(9, 2)
    assert q(1, 1, 1) == 55


def test_matrix_must_be_symmetric():
    with pytest.raises(ValueError, match="symmetric"):
        Quadric([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_tangent_ellipsoids_are_already_normalized():
    s = normalize(*load("tangent"))
    assert s.is_identity and not s.is_mixed
    p = s.monic
    assert to_sym(p.p1) == sp.Rational(-2, 3) * x + sp.Rational(2, 3) * y
    assert to_sym(p.p0) == (x ** 2 + y ** 2 - 1) / 3
    assert to_sym(p.q1) == (-2 * x + 24 * y - 2) / sp.Integer(17)
    assert to_sym(p.q0) == (x ** 2 + 2 * x - 3 + 12 * y ** 2) / sp.Integer(17)


def test_missing_square_term_gets_a_transform():
    e1 = Quadric.from_coefficients([1, 1, 0, 0, 0, 0, 0, 0, 1, 0])  # x^2 + y^2 + z
    e2 = Quadric.from_coefficients([1, 1, 1, 0, 0, 0, 0, 0, 0, -4])
    s = normalize(e1, e2)
    assert not s.is_identity and not s.is_mixed
    _check_scene(s, e1, e2)


def _check_scene(s: NormalizedScene, e1: Quadric, e2: Quadric):
    """Transformed originals are the normalized pair up to the z^2 factor."""
    first, second = (e2, e1) if s.swapped else (e1, e2)
    f = first.transformed(s.M, s.t)
    g = second.transformed(s.M, s.t)
    pair = s.monic
    pts = [(Fraction(1, 3), Fraction(-2), Fraction(5, 7)), (Fraction(0), Fraction(1), Fraction(-1))]
    for p in pts:
        (q,) = map_back(s, [p])
        assert first(*q) == f(*p) == f.A[2][2] * pair.f_at(*p)
        if s.is_mixed:
            assert second(*q) == s.pair.g_at(*p)
        else:
            assert second(*q) == g.A[2][2] * pair.g_at(*p)


@given(quadric_coeffs(), quadric_coeffs())
@settings(max_examples=50, deadline=None)
def test_normalize_preserves_the_equations(c1, c2):
    e1, e2 = Quadric.from_coefficients(c1), Quadric.from_coefficients(c2)
    try:
        s = normalize(e1, e2)
    except UnsupportedCaseError:
        return
    _check_scene(s, e1, e2)


def test_mixed_pair_projection():
    # f = z^2 - x^2 - y^2 + 1, g = z - x
    e1 = Quadric.from_coefficients([-1, -1, 1, 0, 0, 0, 0, 0, 0, 1])
    e2 = Quadric.from_coefficients([0, 0, 0, 0, 0, 0, -1, 0, 1, 0])
    s = normalize(e1, e2, allow_transform=False)
    assert s.is_mixed
    proj = project_mixed(s.pair)
    expect = sp.expand((z ** 2 - x ** 2 - y ** 2 + 1).subs(z, x))
    assert to_sym(proj.s0) == expect == 1 - y ** 2
    assert proj.lift_z(Fraction(3), Fraction(1)) == 3
    _check_scene(s, e1, e2)


def test_mixed_pair_with_plane_z():
    pair = MixedPair(*_bi(0, "x^2 + y^2 - 4", 1, 0))
    proj = project_mixed(pair)
    assert proj.s0 == pair.p0
    assert proj.lift_z(Fraction(2), Fraction(0)) == 0


def test_mixed_pair_second_piece():
    # q1 = x vanishes on a line; points of that line count only where q0 = 0 too
    pair = MixedPair(*_bi("y", "x^2 + y^2 - 9", "x", "x*(y - 1)"))
    proj = project_mixed(pair)
    r = sp.resultant(z ** 2 + y * z + x ** 2 + y ** 2 - 9, x * z + x * (y - 1), z)
    assert to_sym(proj.s0) == sp.expand(r)
    assert proj.q1(0, 1) == 0 and proj.q0(0, 1) == 0
    assert proj.q1(0, 2) == 0 and proj.q0(0, 2) == 0  # whole line x = 0
    assert proj.q0(1, 2) != 0


def _bi(*items):
    return [BiPoly.parse(str(v)) for v in items]


def test_mixed_pair_lifts_through_monic_form():
    pair = MixedPair(*_bi("y", "x^2 + y^2 - 9", "x + 1", "x*(y - 1)"))
    m = pair.as_monic()
    for X, Y in ((Fraction(1), Fraction(2)), (Fraction(-1, 2), Fraction(3))):
        zz = -pair.q0(X, Y) / pair.q1(X, Y)
        assert pair.g_at(X, Y, zz) == 0
        assert m.g_at(X, Y, zz) - m.f_at(X, Y, zz) == 0


def test_map_back_identity():
    s = normalize(*load("tangent"))
    pts = [(Fraction(1), Fraction(2), Fraction(3))]
    assert map_back(s, pts) == pts
    assert s.M == IDENTITY3


@given(st.lists(small, min_size=9, max_size=9), points3)
@settings(deadline=None)
def test_random_affine_round_trip(m, p):
    M = (tuple(m[0:3]), tuple(m[3:6]), tuple(m[6:9]))
    if sp.Matrix(M).det() == 0:
        return
    inv = sp.Matrix(M).inv()
    Minv = tuple(tuple(Fraction(int(v.p), int(v.q)) for v in inv.row(i)) for i in range(3))
    t = (Fraction(1, 2), Fraction(-3), Fraction(0))
    e = Quadric.from_coefficients([1, 1, 1, 0, 0, 0, 0, 0, 0, -1])
    s = NormalizedScene(None, M, t, Minv, e, e)
    (q,) = map_back(s, [p])
    assert s.forward(q) == p


def test_shear_round_trip():
    M = ((Fraction(1), Fraction(0), Fraction(1)), (Fraction(0), Fraction(1), Fraction(0)),
         (Fraction(0), Fraction(0), Fraction(1)))
    Minv = ((Fraction(1), Fraction(0), Fraction(-1)), (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(1)))
    e = Quadric.from_coefficients([1, 1, 1, 0, 0, 0, 0, 0, 0, -1])
    s = NormalizedScene(None, M, (Fraction(0),) * 3, Minv, e, e)
    p = (Fraction(2), Fraction(-1), Fraction(5, 3))
    assert s.forward(map_back(s, [p])[0]) == p


def test_two_planes_are_unsupported():
    a = Quadric.from_coefficients([0, 0, 0, 0, 0, 0, 1, 0, 1, 0])
    b = Quadric.from_coefficients([0, 0, 0, 0, 0, 0, 0, 1, 1, 0])
    with pytest.raises(UnsupportedCaseError):
        normalize(a, b)
