"""Bivariate gcd, squarefree parts and factorization in y over Q(x).

Factors are found by specializing x at a good rational value, splitting
the univariate fiber (rational roots and rational quadratic pieces) and
Hensel-lifting each candidate back to a polynomial factor.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd as igcd

from .bipoly import BiPoly
from .roots import _quadratic_split, rational_roots
from .unipoly import UniPoly, gcd, gcd_many, squarefree_part


def content_x(F: BiPoly) -> UniPoly:
    """Monic gcd in Q[x] of the y-coefficients."""
    if F.is_zero():
        raise ArithmeticError("content of the zero polynomial")
    return gcd_many([c for c in F.y_coeffs() if not c.is_zero()])


def integer_normalized(F: BiPoly) -> BiPoly:
    """Integer coefficients with gcd 1 and positive lex-leading (y, x) term."""
    if F.is_zero():
        return F
    den = 1
    for c in F.terms.values():
        den = den * c.denominator // igcd(den, c.denominator)
    ints = {k: int(c * den) for k, c in F.terms.items()}
    g = 0
    for v in ints.values():
        g = igcd(g, v)
    lead = max(ints, key=lambda m: (m[1], m[0]))
    if ints[lead] < 0:
        g = -g
    return BiPoly({k: Fraction(v, g) for k, v in ints.items()})


def primitive_y(F: BiPoly) -> BiPoly:
    """F divided by its x-content, integer normalized."""
    c = content_x(F)
    if c.degree > 0:
        F = F.exact_div(BiPoly.from_uni(c))
    return integer_normalized(F)


def _prem(F: BiPoly, G: BiPoly) -> BiPoly:
    dG = G.deg_y
    lcG = BiPoly.from_uni(G.y_coeffs()[dG])
    R = F
    while not R.is_zero() and R.deg_y >= dG:
        d = R.deg_y
        lcR = BiPoly.from_uni(R.y_coeffs()[d])
        R = R * lcG - lcR * BiPoly({(0, d - dG): 1}) * G
    return R


def gcd_bi(F: BiPoly, G: BiPoly) -> BiPoly:
    """gcd in Q[x, y], integer normalized (primitive PRS in y)."""
    if F.is_zero() and G.is_zero():
        raise ArithmeticError("gcd of two zero polynomials")
    if F.is_zero():
        return integer_normalized(G)
    if G.is_zero():
        return integer_normalized(F)
    c = gcd(content_x(F), content_x(G))
    A, B = primitive_y(F), primitive_y(G)
    if A.deg_y < B.deg_y:
        A, B = B, A
    while B.deg_y > 0:
        R = _prem(A, B)
        if R.is_zero():
            break
        A, B = B, primitive_y(R)
    if B.deg_y <= 0:
        # primitive parts are coprime in y
        g = BiPoly.constant(1)
    else:
        g = B
    return integer_normalized(g * BiPoly.from_uni(c))


def squarefree_bi(F: BiPoly) -> BiPoly:
    """Product of the distinct irreducible factors of F."""
    if F.is_zero():
        raise ArithmeticError("squarefree part of the zero polynomial")
    c = content_x(F)
    P = primitive_y(F)
    if P.deg_y > 0:
        g = gcd_bi(P, P.diff("y"))
        P = P.exact_div(g)
    cs = squarefree_part(c) if c.degree > 0 else UniPoly([1])
    return integer_normalized(P * BiPoly.from_uni(cs))


# --------------------------------------------------------------------------
# univariate factor splitting over Q (partial, sufficient for degree <= 5)

def split_univariate(p: UniPoly) -> list[UniPoly]:
    """Monic factors of a squarefree p: rational linear ones, rational
    quadratic ones found numerically and verified, and a remainder."""
    out = []
    rest = p.monic()
    for r in rational_roots(p):
        lin = UniPoly([-r, 1], p.var)
        out.append(lin)
        rest = rest.exact_div(lin)
    if rest.degree >= 1:
        for piece in _quadratic_split(rest):
            out.append(piece.monic())
    return out


# --------------------------------------------------------------------------
# Hensel lifting of a fiber factorization

def _ext_euclid(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """s, t with s*a + t*b = 1 for coprime a, b."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1], a.var), UniPoly([], a.var)
    t0, t1 = UniPoly([], a.var), UniPoly([1], a.var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    c = r0.lc
    if r0.degree != 0:
        raise ArithmeticError("factors are not coprime")
    return s0 * (1 / c), t0 * (1 / c)


def _series_in_t(F: BiPoly, x0: Fraction) -> list[UniPoly]:
    """Coefficients in t of F(x0 + t, y), each a polynomial in y."""
    shifted = F.substitute(BiPoly({(1, 0): 1, (0, 0): x0}), BiPoly.y())
    out = [[Fraction(0)] * (shifted.deg_y + 1) for _ in range(shifted.deg_x + 1)]
    for (i, j), c in shifted.terms.items():
        out[i][j] = c
    return [UniPoly(r, "y") for r in out]


def _hensel_factor(Fm: BiPoly, x0: Fraction, A0: UniPoly) -> BiPoly | None:
    """Try to lift the monic fiber factor A0 of a y-monic Fm at x = x0
    to a true factor of Fm."""
    series = _series_in_t(Fm, x0)
    F0 = series[0]
    B0, r = F0.divmod(A0)
    if not r.is_zero():
        return None
    s, t = _ext_euclid(A0, B0)
    N = Fm.deg_x + 1
    A = [A0]
    B = [B0]
    for k in range(1, N):
        e = series[k] if k < len(series) else UniPoly([], "y")
        for i in range(0, k + 1):
            j = k - i
            if i < len(A) and j < len(B):
                e = e - A[i] * B[j]
        dA = (t * e) % A0
        dB = (s * e) % B0
        A.append(dA)
        B.append(dB)
    # back to x: sum A_k(y) (x - x0)^k
    shift = BiPoly({(1, 0): 1, (0, 0): -x0})
    acc = BiPoly()
    pw = BiPoly.constant(1)
    for Ak in A:
        if not Ak.is_zero():
            acc = acc + BiPoly.from_uni(Ak, "y") * pw
        pw = pw * shift
    if Fm.try_div(acc) is None:
        return None
    return acc


def _make_monic(F: BiPoly) -> tuple[BiPoly, UniPoly]:
    """l^(n-1) F(x, y/l), which is monic in y, plus l = lc_y(F)."""
    n = F.deg_y
    cs = F.y_coeffs()
    l = cs[n]
    terms = []
    for k in range(n + 1):
        terms.append(cs[k] * (l ** (n - 1 - k)) if k < n else UniPoly([1]))
    # coefficient of y^k is c_k l^(n-1-k); c_n l^-1 = 1
    return BiPoly.from_y_coeffs(terms), l


def _good_point(Fm: BiPoly) -> Fraction:
    k = 0
    while True:
        x0 = Fraction((k + 1) // 2 * (1 if k % 2 else -1))
        k += 1
        f = Fm.at_x(x0)
        if f.degree == Fm.deg_y and gcd(f, f.deriv()).degree == 0:
            return x0
        if k > 200:
            raise ArithmeticError("no squarefree fiber found")


def _irreducible_factors(P: BiPoly) -> list[BiPoly]:
    """Factors in y of a primitive squarefree P with deg_y >= 1."""
    n = P.deg_y
    if n == 1:
        return [integer_normalized(P)]
    Fm, l = _make_monic(P)
    x0 = _good_point(Fm)
    pieces = split_univariate(Fm.at_x(x0))
    found = []
    remaining = list(pieces)
    size = 1
    while remaining and size <= len(remaining) // 2:
        hit = False
        for combo in combinations(range(len(remaining)), size):
            A0 = UniPoly([1], "y")
            for i in combo:
                A0 = A0 * remaining[i]
            A = _hensel_factor(Fm, x0, A0)
            if A is None:
                continue
            found.append(A)
            Fm = Fm.exact_div(A)
            remaining = [p for i, p in enumerate(remaining) if i not in combo]
            hit = True
            break
        if not hit:
            size += 1
    if Fm.deg_y > 0:
        found.append(Fm)
    # undo the monic transform: A(x, l*y), then drop the x-content
    ly = BiPoly.from_uni(l) * BiPoly.y()
    out = []
    for A in found:
        back = A.substitute(BiPoly.x(), ly)
        out.append(primitive_y(back))
    return out


def factor_in_y(s: BiPoly) -> list[BiPoly]:
    """Factors of s over Q, repeated by multiplicity.

    Pieces of degree <= 2 in y are irreducible over Q(x)[y]; a piece of
    higher degree with no such split is returned whole.  Factors free of
    y (vertical lines and the like) are included; constants are not.
    """
    if s.is_zero():
        raise ArithmeticError("factorization of the zero polynomial")
    out: list[BiPoly] = []
    c = content_x(s)
    if c.degree > 0:
        for p, mult in _uni_factor_with_mult(c):
            out.extend([integer_normalized(BiPoly.from_uni(p))] * mult)
    P = primitive_y(s)
    if P.deg_y <= 0:
        return out
    sq = squarefree_bi(P)
    for f in _irreducible_factors(sq):
        rest = P
        mult = 0
        while True:
            q = rest.try_div(f)
            if q is None:
                break
            rest = q
            mult += 1
        out.extend([f] * mult)
    return out


def _uni_factor_with_mult(c: UniPoly) -> list[tuple[UniPoly, int]]:
    out = []
    for p in split_univariate(squarefree_part(c)):
        mult = 0
        rest = c
        while True:
            q, r = rest.divmod(p)
            if not r.is_zero():
                break
            rest = q
            mult += 1
        out.append((p, mult))
    return out
