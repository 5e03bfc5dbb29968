"""Subresultants as determinants over an exact coefficient ring.

Coefficients may be Fractions, :class:`UniPoly` or :class:`BiPoly`; the
ring only needs ``+ - *`` and exact division.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .bipoly import BiPoly
from .unipoly import UniPoly, interpolate


def _is_zero(e) -> bool:
    if isinstance(e, (UniPoly, BiPoly)):
        return e.is_zero()
    return e == 0


def _exact_div(a, b):
    if isinstance(a, (UniPoly, BiPoly)):
        return a.exact_div(b)
    return Fraction(a) / b


def bareiss_det(rows: Sequence[Sequence]):
    """Determinant by fraction-free Gaussian elimination.

    Every intermediate division is exact, so polynomial entries stay
    polynomial.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for r in range(k + 1, n):
                if not _is_zero(m[r][k]):
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * piv - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
        prev = piv
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def subresultant_matrix(P: Sequence, Q: Sequence, j: int, t) -> list[list]:
    """The j-th subresultant matrix with the variable set to ``t``.

    P and Q are coefficient lists in *descending* order (a_0 is the leading
    coefficient), matching the usual Sylvester layout.
    """
    m, n = len(P) - 1, len(Q) - 1
    size = m + n - j
    zero = P[0] * 0
    one = zero + 1
    rows = []
    for k in range(n - j):
        row = [zero] * size
        for i, a in enumerate(P):
            row[k + i] = a
        rows.append(row)
    base = m + n - 2 * j - 1
    for i in range(j):
        row = [zero] * size
        row[base + i] = one
        row[base + i + 1] = one * (-t)
        rows.append(row)
    for k in range(m - j):
        row = [zero] * size
        for i, b in enumerate(Q):
            row[k + i] = b
        rows.append(row)
    return rows


def subresultant(P: Sequence, Q: Sequence, j: int) -> list:
    """Coefficients (ascending in the eliminated variable) of Sres_j(P, Q).

    The determinant is polynomial of degree <= j in the variable; it is
    evaluated at j + 1 integer nodes and interpolated exactly.
    """
    m, n = len(P) - 1, len(Q) - 1
    if m < 0 or n < 0:
        raise ValueError("empty polynomial")
    if not 0 <= j <= min(m, n):
        raise ValueError(f"subresultant index {j} outside [0, {min(m, n)}]")
    if _is_zero(P[0]) or _is_zero(Q[0]):
        raise ValueError("leading coefficients must be nonzero")
    nodes = list(range(j + 1))
    vals = [bareiss_det(subresultant_matrix(P, Q, j, Fraction(t))) for t in nodes]
    if j == 0:
        return vals
    # Lagrange basis over the rationals applied to ring-valued samples
    out = []
    basis = []
    for i, xi in enumerate(nodes):
        b = UniPoly([1])
        den = Fraction(1)
        for k, xk in enumerate(nodes):
            if k != i:
                b = b * UniPoly([-xk, 1])
                den *= xi - xk
        basis.append(b / den)
    for d in range(j + 1):
        acc = vals[0] * 0
        for i in range(j + 1):
            w = basis[i][d]
            if w:
                acc = acc + vals[i] * w
        out.append(acc)
    return out


def sres_coefficient(P: Sequence, Q: Sequence, j: int):
    """Coefficient of the variable's j-th power in Sres_j."""
    return subresultant(P, Q, j)[j]


# --------------------------------------------------------------------------
# bivariate helpers: eliminate y from BiPolys (coefficients in Q[x])

def _desc_y(F: BiPoly) -> list[UniPoly]:
    return F.y_coeffs()[::-1]


def sres_y(F: BiPoly, G: BiPoly, j: int) -> list[UniPoly]:
    """Sres_j(F, G; y) as ascending y-coefficients in Q[x]."""
    return subresultant(_desc_y(F), _desc_y(G), j)


def resultant_y(F: BiPoly, G: BiPoly) -> UniPoly:
    """Res_y(F, G) as a polynomial in x.

    When one input is free of y the resultant is a power of it.
    """
    if F.is_zero() or G.is_zero():
        return UniPoly([])
    m, n = F.deg_y, G.deg_y
    if m == 0:
        return F.to_uni("x") ** n
    if n == 0:
        return G.to_uni("x") ** m
    return sres_y(F, G, 0)[0]


def resultant_x(F: BiPoly, G: BiPoly) -> UniPoly:
    """Res_x(F, G) as a polynomial in y."""
    return resultant_y(F.swap(), G.swap()).with_var("y")


def discriminant_y(F: BiPoly) -> UniPoly:
    """Res_y(F, dF/dy); the leading-coefficient factor is kept."""
    if F.deg_y <= 0:
        return UniPoly([1])
    if F.deg_y == 1:
        return F.y_coeffs()[1]
    return resultant_y(F, F.diff("y"))


def resultant_z_quadratic(p1, p0, q1, q0):
    """Res_z(z^2 + p1 z + p0, z^2 + q1 z + q0) by the 4x4 determinant."""
    one = p1 * 0 + 1
    return subresultant([one, p1, p0], [one, q1, q0], 0)[0]
