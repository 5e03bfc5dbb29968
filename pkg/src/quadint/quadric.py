"""Quadrics as symmetric 4x4 matrices and their normalization in z."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .algebra.bipoly import BiPoly
from .algebra.unipoly import _frac
from .elimination import MonicZPair
from .errors import UnsupportedCaseError

# coefficient order of the flat form
COEFF_NAMES = ("x^2", "y^2", "z^2", "xy", "xz", "yz", "x", "y", "z", "1")


def _mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(m)
    a = [[_frac(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [vr - f * vc for vr, vc in zip(a[r], a[c])]
    return [row[n:] for row in a]


class Quadric:
    """Surface ``(x y z 1) A (x y z 1)^T = 0`` for a symmetric rational A."""

    __slots__ = ("A",)

    def __init__(self, A: Sequence[Sequence]):
        M = tuple(tuple(_frac(v) for v in row) for row in A)
        if len(M) != 4 or any(len(r) != 4 for r in M):
            raise ValueError("quadric matrix must be 4x4")
        for i in range(4):
            for j in range(i + 1, 4):
                if M[i][j] != M[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i + 1},{j + 1})")
        if all(v == 0 for r in M for v in r):
            raise ValueError("zero quadric")
        object.__setattr__(self, "A", M)

    def __setattr__(self, name, value):
        raise AttributeError("Quadric is immutable")

    @classmethod
    def from_coefficients(cls, c: Sequence) -> "Quadric":
        """From (x^2, y^2, z^2, xy, xz, yz, x, y, z, 1)."""
        if len(c) != 10:
            raise ValueError("expected 10 coefficients")
        c = [_frac(v) for v in c]
        h = Fraction(1, 2)
        return cls([
            [c[0], c[3] * h, c[4] * h, c[6] * h],
            [c[3] * h, c[1], c[5] * h, c[7] * h],
            [c[4] * h, c[5] * h, c[2], c[8] * h],
            [c[6] * h, c[7] * h, c[8] * h, c[9]],
        ])

    def coefficients(self) -> list[Fraction]:
        A = self.A
        return [A[0][0], A[1][1], A[2][2], 2 * A[0][1], 2 * A[0][2], 2 * A[1][2],
                2 * A[0][3], 2 * A[1][3], 2 * A[2][3], A[3][3]]

    def __call__(self, x, y, z):
        v = (x, y, z, 1)
        acc = 0
        for i in range(4):
            for j in range(4):
                if self.A[i][j]:
                    acc = acc + self.A[i][j] * v[i] * v[j]
        return acc

    def z_parts(self) -> tuple[Fraction, BiPoly, BiPoly]:
        """(coefficient of z^2, coefficient of z, z-free part)."""
        A = self.A
        X, Y = BiPoly.x(), BiPoly.y()
        c1 = X * (2 * A[0][2]) + Y * (2 * A[1][2]) + 2 * A[2][3]
        c0 = (X * X * A[0][0] + Y * Y * A[1][1] + X * Y * (2 * A[0][1])
              + X * (2 * A[0][3]) + Y * (2 * A[1][3]) + A[3][3])
        return A[2][2], c1, c0

    def quadratic_form(self, v: Sequence[Fraction]) -> Fraction:
        return sum(self.A[i][j] * v[i] * v[j] for i in range(3) for j in range(3))

    def is_planar(self) -> bool:
        """No quadratic terms at all."""
        return all(self.A[i][j] == 0 for i in range(3) for j in range(3))

    def transformed(self, M, t) -> "Quadric":
        """The quadric in coordinates p' with p = M p' + t."""
        C = [[_frac(M[i][j]) for j in range(3)] + [_frac(t[i])] for i in range(3)]
        C.append([Fraction(0)] * 3 + [Fraction(1)])
        return Quadric(_mat_mul(_mat_mul(_transpose(C), [list(r) for r in self.A]), C))

    def max_abs_coeff(self) -> Fraction:
        return max(abs(v) for v in self.coefficients())


@dataclass(frozen=True)
class MixedPair:
    """f = z^2 + p1 z + p0 and a second equation g = q1 z + q0."""

    p1: BiPoly
    p0: BiPoly
    q1: BiPoly
    q0: BiPoly

    def as_monic(self) -> MonicZPair:
        # {f = 0, g = 0} = {f = 0, f + g = 0}; same resultant, and the
        # subresultant lift -(q0)/(q1) is unchanged
        return MonicZPair(self.p1, self.p0, self.p1 + self.q1, self.p0 + self.q0)

    def f_at(self, x, y, z):
        return z * z + self.p1(x, y) * z + self.p0(x, y)

    def g_at(self, x, y, z):
        return self.q1(x, y) * z + self.q0(x, y)


@dataclass(frozen=True)
class MixedProjection:
    """Projection of a mixed pair: {s0 = 0, delta >= 0, q1 != 0} together
    with the points {s0 = 0, delta >= 0, q1 = 0, q0 = 0}."""

    s0: BiPoly
    delta: BiPoly
    q1: BiPoly
    q0: BiPoly
    planar_section: bool  # q1 identically zero

    def lift_z(self, x, y):
        return -self.q0(x, y) / self.q1(x, y)


def project_mixed(pair: MixedPair) -> MixedProjection:
    s0 = pair.q0 ** 2 - pair.p1 * pair.q0 * pair.q1 + pair.p0 * pair.q1 ** 2
    return MixedProjection(
        s0=s0,
        delta=pair.p1 ** 2 - pair.p0 * 4,
        q1=pair.q1,
        q0=pair.q0,
        planar_section=pair.q1.is_zero(),
    )


IDENTITY3 = ((Fraction(1), Fraction(0), Fraction(0)),
             (Fraction(0), Fraction(1), Fraction(0)),
             (Fraction(0), Fraction(0), Fraction(1)))
ZERO3 = (Fraction(0), Fraction(0), Fraction(0))


@dataclass(frozen=True)
class NormalizedScene:
    pair: MonicZPair | MixedPair
    M: tuple  # p_original = M p + t
    t: tuple
    M_inv: tuple
    e1: Quadric
    e2: Quadric
    swapped: bool = False  # inputs were exchanged to put the quadric first

    @property
    def monic(self) -> MonicZPair:
        return self.pair.as_monic() if isinstance(self.pair, MixedPair) else self.pair

    @property
    def is_mixed(self) -> bool:
        return isinstance(self.pair, MixedPair)

    @property
    def is_identity(self) -> bool:
        return self.M == IDENTITY3 and self.t == ZERO3

    def forward(self, p):
        """Original coordinates to normalized coordinates."""
        d = [p[i] - self.t[i] for i in range(3)]
        return tuple(sum(self.M_inv[i][j] * d[j] for j in range(3)) for i in range(3))


def map_back(scene: NormalizedScene, pts):
    """Normalized-coordinate points to original coordinates (exact for
    rational input, plain arithmetic otherwise)."""
    M, t = scene.M, scene.t
    out = []
    for p in pts:
        out.append(tuple(sum(M[i][j] * p[j] for j in range(3)) + t[i] for i in range(3)))
    return out


def _candidate_transforms():
    """Deterministic search order of linear maps (columns = new axes)."""
    yield IDENTITY3
    for perm in permutations(range(3)):
        if perm == (0, 1, 2):
            continue
        M = [[Fraction(0)] * 3 for _ in range(3)]
        for new_axis, old_axis in enumerate(perm):
            M[old_axis][new_axis] = Fraction(1)
        yield tuple(tuple(r) for r in M)
    lams = [1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2)]
    for lam in lams:
        for k in (0, 1):
            # new z axis tilted toward old x (k = 0) or old y (k = 1)
            M = [list(r) for r in IDENTITY3]
            M[k][2] = Fraction(lam)
            yield tuple(tuple(r) for r in M)
    for a in lams:
        for b in lams:
            M = [list(r) for r in IDENTITY3]
            M[0][2], M[1][2] = Fraction(a), Fraction(b)
            yield tuple(tuple(r) for r in M)


def _monic_parts(q: Quadric) -> tuple[BiPoly, BiPoly]:
    a, c1, c0 = q.z_parts()
    return c1 / a, c0 / a


def _z_coefficient_nonzero(q: Quadric, v) -> bool:
    # for a quadric without quadratic terms the z coefficient along v
    return any(q.A[i][3] * v[i] != 0 for i in range(3)) if q.is_planar() else False


def normalize(e1: Quadric, e2: Quadric, allow_transform: bool = True) -> NormalizedScene:
    """Bring the pair to monic-in-z form (or a mixed pair when one side is
    linear in z) under a common change of coordinates."""
    if e1.is_planar() and e2.is_planar():
        raise UnsupportedCaseError("both surfaces are planes: nothing quadratic in z")
    swapped = False
    if e1.is_planar() or (not allow_transform and e1.A[2][2] == 0 and e2.A[2][2] != 0):
        e1, e2 = e2, e1
        swapped = True
    planar2 = e2.is_planar()
    candidates = [IDENTITY3] if not allow_transform else _candidate_transforms()
    for M in candidates:
        v = [M[i][2] for i in range(3)]
        if e1.quadratic_form(v) == 0:
            continue
        f = e1.transformed(M, ZERO3)
        g = e2.transformed(M, ZERO3)
        p1, p0 = _monic_parts(f)
        if not planar2 and e2.quadratic_form(v) != 0:
            q1, q0 = _monic_parts(g)
            pair = MonicZPair(p1, p0, q1, q0)
        elif planar2 or not allow_transform:
            if planar2 and not _z_coefficient_nonzero(e2, v) and allow_transform:
                continue
            _, c1, c0 = g.z_parts()
            if c1.is_zero() and c0.is_constant():
                raise UnsupportedCaseError("second equation is constant")
            pair = MixedPair(p1, p0, c1, c0)
        else:
            continue
        return NormalizedScene(pair, M, ZERO3, tuple(tuple(r) for r in mat_inverse(M)),
                               e1, e2, swapped)
    if not allow_transform:
        raise UnsupportedCaseError("neither equation is quadratic in z and transforms are disabled")
    raise UnsupportedCaseError("no coordinate change makes the pair quadratic in z")
