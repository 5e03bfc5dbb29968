from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import from_sym, pair_from_sym, scene, sym_resultant, to_sym, x, y, z
from quadint.algebra.bipoly import BiPoly
from quadint.elimination import (MonicZPair, compute_bundle, grad_s0, discriminant_identity_rhs,
                                 s0_closed_formula, s0_determinant, s1_determinant,
                                 verify_cutcurve_identity)

small = st.fractions(min_value=-10, max_value=10, max_denominator=10)


@st.composite
def monic_pairs(draw):
    def affine():
        a, b, c = draw(small), draw(small), draw(small)
        return BiPoly({(1, 0): a, (0, 1): b, (0, 0): c})

    def quad():
        return BiPoly({m: draw(small) for m in ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))})

    return MonicZPair(affine(), quad(), affine(), quad())


@st.composite
def common_root_instances(draw):
    """A pair with a common z-root z0 above the rational point (a, b)."""
    a, b, z0 = draw(small), draw(small), draw(small)
    pair = draw(monic_pairs())
    on_line = draw(st.booleans())
    q1 = pair.q1
    if on_line:
        q1 = q1 + (pair.p1(a, b) - q1(a, b))
    p0 = pair.p0 - (z0 * z0 + pair.p1(a, b) * z0 + pair.p0(a, b))
    q0 = pair.q0 - (z0 * z0 + q1(a, b) * z0 + pair.q0(a, b))
    return MonicZPair(pair.p1, p0, q1, q0), (a, b, z0)


def test_sphere_example_bundle():
    s, b = scene("sphere")
    assert to_sym(b.s0) == sp.expand((-2 * x ** 2 + x * y - 2 * y ** 2 + 2 * x + 7) ** 2)
    assert to_sym(b.delta1) == -4 * x ** 2 - 4 * y ** 2 + 28
    assert to_sym(b.delta2) == 4 * x ** 2 - 4 * x * y + 4 * y ** 2 - 8 * x


def test_paraboloid_bundle():
    _, b = scene("paraboloids")
    assert to_sym(b.s0) == sp.expand((x - y) ** 2 * (x + y + 1))


def test_equal_linear_parts_give_square():
    pair = pair_from_sym(x + y, x * y + 3, x + y, x ** 2 - y)
    b = compute_bundle(pair)
    assert to_sym(b.s0) == sp.expand((x * y + 3 - x ** 2 + y) ** 2)
    assert verify_cutcurve_identity(pair)


@given(monic_pairs())
@settings(max_examples=100, deadline=None)
def test_three_forms_of_the_resultant_agree(pair):
    s0 = s0_closed_formula(pair)
    assert s0_determinant(pair) == s0
    assert discriminant_identity_rhs(pair) == s0
    assert to_sym(s0) == sym_resultant(pair)
    assert s0.total_degree <= 4
    a, b = s1_determinant(pair)
    assert (a, b) == (pair.q1 - pair.p1, pair.q0 - pair.p0)


def test_gradient_of_paraboloid_cutcurve():
    _, b = scene("paraboloids")
    gx, gy = grad_s0(b)
    assert to_sym(gx) == sp.expand((x - y) * (3 * x + y + 2))
    assert to_sym(gy) == sp.expand(sp.diff((x - y) ** 2 * (x + y + 1), y))


def test_gradient_vanishes_at_tangent_point():
    _, b = scene("tangent")
    gx, gy = grad_s0(b)
    assert b.s0(1, 0) == 0 and gx(1, 0) == 0 and gy(1, 0) == 0


def test_gradient_of_constant_cutcurve():
    pair = pair_from_sym(x, y, x, y + 1)
    b = compute_bundle(pair)
    assert b.s0.is_constant()
    assert all(g.is_zero() for g in grad_s0(b))


@given(common_root_instances())
@settings(max_examples=100, deadline=None)
def test_common_root_properties(inst):
    pair, (a, b, z0) = inst
    bundle = compute_bundle(pair)
    assert bundle.s0(a, b) == 0
    L = pair.p1(a, b) - pair.q1(a, b)
    gx, gy = grad_s0(bundle)
    if L == 0:
        # equal linear parts force equal constant parts, and a singular point
        assert pair.p0(a, b) == pair.q0(a, b)
        assert gx(a, b) == 0 and gy(a, b) == 0
    else:
        z1 = -(pair.q0(a, b) - pair.p0(a, b)) / (pair.q1(a, b) - pair.p1(a, b))
        assert z1 == z0
        f = z ** 2 + to_sym(pair.p1) * z + to_sym(pair.p0)
        g = z ** 2 + to_sym(pair.q1) * z + to_sym(pair.q0)
        at = {x: sp.Rational(a.numerator, a.denominator),
              y: sp.Rational(b.numerator, b.denominator),
              z: sp.Rational(z0.numerator, z0.denominator)}
        for var, grad in ((x, gx), (y, gy)):
            jac = (sp.diff(f, var) * sp.diff(g, z) - sp.diff(f, z) * sp.diff(g, var)).subs(at)
            assert grad(a, b) == Fraction(str(-L * jac))


def test_first_subresultant_is_difference():
    pair = pair_from_sym(x - 1, x * y, 2 * y, y ** 2 - 3)
    a, b = s1_determinant(pair)
    f = z ** 2 + (x - 1) * z + x * y
    g = z ** 2 + 2 * y * z + y ** 2 - 3
    assert sp.expand(to_sym(a) * z + to_sym(b)) == sp.expand(g - f)
