"""Elimination of z between two quadrics that are monic quadratics in z."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.bipoly import BiPoly
from .algebra.factor import squarefree_bi
from .algebra.subres import resultant_z_quadratic, subresultant
from .errors import InconsistencyError


@dataclass(frozen=True)
class MonicZPair:
    """f = z^2 + p1 z + p0 and g = z^2 + q1 z + q0 with p1, q1 affine and
    p0, q0 of total degree at most 2 in (x, y)."""

    p1: BiPoly
    p0: BiPoly
    q1: BiPoly
    q0: BiPoly

    def __post_init__(self):
        for name, lim in (("p1", 1), ("q1", 1), ("p0", 2), ("q0", 2)):
            if getattr(self, name).total_degree > lim:
                raise ValueError(f"{name} has total degree above {lim}")

    def f_at(self, x, y, z):
        return z * z + self.p1(x, y) * z + self.p0(x, y)

    def g_at(self, x, y, z):
        return z * z + self.q1(x, y) * z + self.q0(x, y)

    def f_coeffs(self):
        return self.p1, self.p0

    def g_coeffs(self):
        return self.q1, self.q0


@dataclass(frozen=True)
class EliminationBundle:
    s0: BiPoly
    s0_squarefree: BiPoly
    s1_coeffs: tuple[BiPoly, BiPoly]  # (q1 - p1, q0 - p0): S1 = a z + b
    delta1: BiPoly
    delta2: BiPoly
    line: BiPoly  # p1 - q1
    degenerate: bool = False

    @property
    def line_identically_zero(self) -> bool:
        return self.line.is_zero()


def s0_closed_formula(pair: MonicZPair) -> BiPoly:
    p1, p0, q1, q0 = pair.p1, pair.p0, pair.q1, pair.q0
    return (p0 - q0) ** 2 - (p1 - q1) * (p0 * q1 - q0 * p1)


def discriminant_identity_rhs(pair: MonicZPair) -> BiPoly:
    """(L^4 + (D1 - D2)^2 - 2 L^2 (D1 + D2)) / 16 with L = p1 - q1."""
    L = pair.p1 - pair.q1
    d1 = pair.p1 ** 2 - pair.p0 * 4
    d2 = pair.q1 ** 2 - pair.q0 * 4
    return (L ** 4 + (d1 - d2) ** 2 - L ** 2 * (d1 + d2) * 2) / 16


def s0_determinant(pair: MonicZPair) -> BiPoly:
    return resultant_z_quadratic(pair.p1, pair.p0, pair.q1, pair.q0)


def s1_determinant(pair: MonicZPair) -> tuple[BiPoly, BiPoly]:
    """(coefficient of z, constant term) of Sres_1(f, g; z)."""
    one = BiPoly.constant(1)
    b, a = subresultant([one, pair.p1, pair.p0], [one, pair.q1, pair.q0], 1)
    return a, b


def verify_cutcurve_identity(pair: MonicZPair) -> bool:
    """Exact check of the discriminant form of the resultant."""
    return s0_closed_formula(pair) == discriminant_identity_rhs(pair)


def compute_bundle(pair: MonicZPair, verify: bool = True) -> EliminationBundle:
    s0 = s0_closed_formula(pair)
    if verify:
        if s0_determinant(pair) != s0:
            raise InconsistencyError("resultant determinant disagrees with closed formula")
        if discriminant_identity_rhs(pair) != s0:
            raise InconsistencyError("discriminant identity for the resultant fails")
        a, b = s1_determinant(pair)
        if (a, b) != (pair.q1 - pair.p1, pair.q0 - pair.p0):
            raise InconsistencyError("first subresultant disagrees with g - f")
    if s0.total_degree > 4:
        raise InconsistencyError("resultant exceeds degree four")
    degenerate = s0.is_zero()
    return EliminationBundle(
        s0=s0,
        s0_squarefree=s0 if degenerate else squarefree_bi(s0),
        s1_coeffs=(pair.q1 - pair.p1, pair.q0 - pair.p0),
        delta1=pair.p1 ** 2 - pair.p0 * 4,
        delta2=pair.q1 ** 2 - pair.q0 * 4,
        line=pair.p1 - pair.q1,
        degenerate=degenerate,
    )


def grad_s0(bundle: EliminationBundle) -> tuple[BiPoly, BiPoly]:
    return bundle.s0.diff("x"), bundle.s0.diff("y")


def subresultant_of(P, Q, j: int):
    """Sres_j(P, Q) for coefficient lists in descending order."""
    return subresultant(P, Q, j)
