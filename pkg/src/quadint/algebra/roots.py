"""Real root isolation and real algebraic numbers.

Roots are isolated with Descartes' rule of signs on integer polynomials
(Vincent-Collins-Akritas bisection).  Rational roots are detected exactly
and quadratic factors carry a closed radical form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

import mpmath
import numpy as np

from .surd import QuadSurd, sqrt_rational
from .unipoly import UniPoly, gcd, sign_variations, squarefree_part, _frac


# --------------------------------------------------------------------------
# integer polynomial helpers (coefficients ascending)

def _taylor_shift1(a: list[int]) -> list[int]:
    """Coefficients of a(x + 1)."""
    a = list(a)
    n = len(a)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            a[k] += a[k + 1]
    return a


def _var_01(a: list[int]) -> int:
    """Descartes bound for the number of roots of a in (0, 1)."""
    return sign_variations(_taylor_shift1(a[::-1]))


def _int_eval_sign(a: list[int], num: int, den: int) -> int:
    """Sign of a(num/den) for den > 0, using integers only."""
    n = len(a) - 1
    acc = 0
    pw = 1
    # sum a_i num^i den^(n-i)
    dens = [1] * (n + 1)
    for i in range(1, n + 1):
        dens[i] = dens[i - 1] * den
    for i, c in enumerate(a):
        if c:
            acc += c * pw * dens[n - i]
        pw *= num
    return (acc > 0) - (acc < 0)


def _cauchy_log2_bound(a: list[int]) -> int:
    lc = abs(a[-1])
    m = max((abs(c) for c in a[:-1]), default=0)
    bound = 1 + Fraction(m, lc)
    k = 0
    while (1 << k) <= bound:
        k += 1
    return k


def _isolate_positive(a: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the roots of a squarefree integer polynomial
    in (0, inf). Exact roots are returned as degenerate intervals."""
    n = len(a) - 1
    if n <= 0:
        return []
    k = _cauchy_log2_bound(a)
    B = 1 << k
    # q(x) = a(B x): roots in (0, 1)
    q = [c * B ** i for i, c in enumerate(a)]
    out = []
    stack = [(q, 0, 0)]  # poly, c, depth -> interval (c/2^d, (c+1)/2^d) * B
    while stack:
        q, c, d = stack.pop()
        v = _var_01(q)
        if v == 0:
            continue
        lo = Fraction(c * B, 1 << d)
        hi = Fraction((c + 1) * B, 1 << d)
        if v == 1:
            out.append((lo, hi))
            continue
        # left half: 2^n q(x/2)
        left = [coef << (n - i) for i, coef in enumerate(q)]
        if sum(left) == 0:  # q(1/2) == 0
            mid = Fraction((2 * c + 1) * B, 1 << (d + 1))
            out.append((mid, mid))
        right = _taylor_shift1(left)
        stack.append((right, 2 * c + 1, d + 1))
        stack.append((left, 2 * c, d + 1))
    out.sort()
    return out


def _isolate_int(a: list[int]) -> list[tuple[Fraction, Fraction]]:
    """All real roots of a squarefree integer polynomial."""
    out = []
    orig = a
    zero_mult = 0
    while a and a[0] == 0:
        a = a[1:]
        zero_mult += 1
    if zero_mult:
        out.append((Fraction(0), Fraction(0)))
    if len(a) <= 1:
        return out
    neg = [c if i % 2 == 0 else -c for i, c in enumerate(a)]
    found = [(-hi, -lo) for lo, hi in _isolate_positive(neg)]
    found += _isolate_positive(a)
    for lo, hi in found:
        if lo < hi and (_sign_q(orig, lo) == 0 or _sign_q(orig, hi) == 0):
            lo, hi = _shrink_off_roots(orig, lo, hi)
        out.append((lo, hi))
    out.sort()
    return out


def _sign_q(a: list[int], r: Fraction) -> int:
    return _int_eval_sign(a, r.numerator, r.denominator)


def _count_in(a: list[int], lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for roots of a inside (lo, hi)."""
    p = UniPoly(a).compose(UniPoly([lo, hi - lo]))
    return _var_01(p.integer_coeffs())


def _shrink_off_roots(a, lo, hi):
    # the interval holds one root in its interior; endpoints may be other
    # (already recorded) roots, so move them inward
    while _sign_q(a, lo) == 0 or _sign_q(a, hi) == 0:
        mid = (lo + hi) / 2
        if _sign_q(a, mid) == 0:
            return mid, mid
        if _count_in(a, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


# --------------------------------------------------------------------------

class AlgebraicNumber:
    """A real root of a squarefree rational polynomial, pinned down by an
    isolating interval.

    Rational numbers use a linear defining polynomial and a degenerate
    interval ``[r, r]``.  Roots of quadratics also keep ``closed``, an
    exact :class:`QuadSurd`.
    """

    __slots__ = ("defining", "lo", "hi", "closed", "_ints")

    def __init__(self, defining: UniPoly, lo, hi, closed: QuadSurd | None = None):
        lo, hi = _frac(lo), _frac(hi)
        if lo > hi:
            raise ValueError("empty isolating interval")
        object.__setattr__(self, "defining", defining)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "closed", closed)
        object.__setattr__(self, "_ints", defining.integer_coeffs())

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraicNumber is immutable")

    @classmethod
    def rational(cls, r) -> "AlgebraicNumber":
        r = _frac(r)
        return cls(UniPoly([-r, 1]), r, r, QuadSurd(r))

    @property
    def degree(self) -> int:
        return self.defining.degree

    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def _sign_def(self, r: Fraction) -> int:
        return _int_eval_sign(self._ints, r.numerator, r.denominator)

    def refine(self, width) -> "AlgebraicNumber":
        """Bisect until the interval is no wider than ``width``."""
        width = _frac(width)
        if self.hi - self.lo <= width:
            return self
        lo, hi = self.lo, self.hi
        slo = self._sign_def(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = self._sign_def(mid)
            if s == 0:
                return AlgebraicNumber(UniPoly([-mid, 1]), mid, mid, QuadSurd(mid))
            if s == slo:
                lo = mid
            else:
                hi = mid
        return AlgebraicNumber(self.defining, lo, hi, self.closed)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        if self.closed is not None:
            return float(self.closed)
        return float(self.refine(Fraction(1, 1 << 60)).midpoint())

    def to_mpf(self, dps: int = 30):
        if self.closed is not None:
            return self.closed.to_mpf(dps)
        r = self.refine(Fraction(1, 10 ** (dps + 5)))
        with mpmath.workdps(dps + 5):
            m = r.midpoint()
            return mpmath.mpf(m.numerator) / m.denominator

    def sign_of(self, p: UniPoly) -> int:
        """Exact sign of p at this number."""
        if p.is_zero():
            return 0
        if self.is_rational():
            return p.sign_at(self.lo)
        if self.closed is not None:
            return p(self.closed).sign()
        g = gcd(self.defining, p)
        if g.degree >= 1:
            # g squarefree and its only possible root in the interval is ours
            gi = g.integer_coeffs()
            slo = _int_eval_sign(gi, self.lo.numerator, self.lo.denominator)
            shi = _int_eval_sign(gi, self.hi.numerator, self.hi.denominator)
            if slo * shi < 0:
                return 0
        cur = self
        while True:
            a, b = p.eval_interval(cur.lo, cur.hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            cur = cur.refine(cur.width / 4)
            if cur.is_rational():
                return p.sign_at(cur.lo)

    def compare(self, other: "AlgebraicNumber | Fraction | int") -> int:
        """-1, 0, 1 as self <, ==, > other, decided exactly."""
        if not isinstance(other, AlgebraicNumber):
            other = AlgebraicNumber.rational(other)
        if self.closed is not None and other.closed is not None:
            try:
                return (self.closed - other.closed).sign()
            except ValueError:
                pass
        if self.is_rational():
            return -other.sign_of(UniPoly([-self.lo, 1]))
        if other.is_rational():
            return self.sign_of(UniPoly([-other.lo, 1]))
        a, b = self, other
        g = gcd(a.defining, b.defining)
        if g.degree >= 1:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo <= hi:
                gi = g.integer_coeffs()
                # a root of g in both intervals is both numbers at once
                if lo < hi:
                    slo = _int_eval_sign(gi, lo.numerator, lo.denominator)
                    shi = _int_eval_sign(gi, hi.numerator, hi.denominator)
                    if slo * shi < 0:
                        return 0
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            if g.degree >= 1:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                gi = g.integer_coeffs()
                if lo < hi:
                    slo = _int_eval_sign(gi, lo.numerator, lo.denominator)
                    shi = _int_eval_sign(gi, hi.numerator, hi.denominator)
                    if slo * shi < 0 and _contains_same_root(a, b, g):
                        return 0
            a = a.refine(a.width / 2)
            b = b.refine(b.width / 2)
            if a.is_rational() or b.is_rational():
                return a.compare(b)

    def __eq__(self, other):
        if isinstance(other, (AlgebraicNumber, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self.compare(other) < 0

    def __hash__(self):
        return hash(round(float(self), 9))

    def __repr__(self):
        return f"AlgebraicNumber({self})"

    def __str__(self):
        if self.closed is not None:
            return str(self.closed)
        return f"root of {self.defining} in [{self.lo}, {self.hi}]"


def _contains_same_root(a: AlgebraicNumber, b: AlgebraicNumber, g: UniPoly) -> bool:
    # both isolating intervals contain the (unique) root of g lying in their
    # intersection, so each number equals that root
    gi = g.integer_coeffs()
    for x in (a, b):
        s1 = _int_eval_sign(gi, x.lo.numerator, x.lo.denominator)
        s2 = _int_eval_sign(gi, x.hi.numerator, x.hi.denominator)
        if s1 * s2 >= 0:
            return False
    return True


def sort_numbers(nums: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    return sorted(nums, key=cmp_to_key(lambda a, b: a.compare(b)))


def dedup_sorted(nums: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    out: list[AlgebraicNumber] = []
    for n in sort_numbers(nums):
        if not out or out[-1].compare(n) != 0:
            out.append(n)
    return out


# --------------------------------------------------------------------------

def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of p, ascending (exact)."""
    if p.is_zero():
        raise ArithmeticError("rational roots of the zero polynomial")
    sq = squarefree_part(p)
    if sq.degree <= 0:
        return []
    ints = sq.integer_coeffs()
    lead, const = abs(ints[-1]), abs(ints[0])
    out = []
    for lo, hi in _isolate_int(ints):
        if lo == hi:
            out.append(lo)
            continue
        # a rational root p/q has q | lead, so it is the unique fraction with
        # denominator <= lead once the interval is narrower than 1/lead^2
        if const != 0:
            num_bound = const
        else:
            num_bound = None
        an = AlgebraicNumber(sq, lo, hi)
        an = an.refine(Fraction(1, 2 * lead * lead + 2))
        if an.is_rational():
            out.append(an.lo)
            continue
        cand = an.midpoint().limit_denominator(lead)
        if an.lo < cand < an.hi and sq(cand) == 0:
            if num_bound is None or abs(cand.numerator) <= num_bound:
                out.append(cand)
    return sorted(out)


def polish_roots(coeffs: list, maxsteps: int = 60, extraprec: int = 60):
    """All complex roots of the polynomial with descending coefficients
    at the working precision, seeded by a double-precision eigenvalue
    solve.  None when the iteration fails to converge."""
    scale = max(abs(c) for c in coeffs)
    seed = np.roots([float(c / scale) for c in coeffs])
    init = [mpmath.mpc(complex(r)) for r in seed]
    if len(init) != len(coeffs) - 1 or not all(mpmath.isfinite(r) for r in init):
        init = None
    try:
        roots = mpmath.polyroots(coeffs, maxsteps=maxsteps, extraprec=extraprec,
                                 roots_init=init)
    except mpmath.libmp.libhyper.NoConvergence:
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        except mpmath.libmp.libhyper.NoConvergence:
            return None
    return roots if isinstance(roots, list) else [roots]


def _quadratic_split(p: UniPoly) -> list[UniPoly]:
    """Try to split p (no rational roots) into rational quadratic factors.
    Returns the list of factors found plus the unsplit remainder."""
    if p.degree < 4:
        return [p]
    ints = p.integer_coeffs()
    L = ints[-1]
    with mpmath.workdps(50):
        roots = polish_roots([mpmath.mpf(c) for c in ints[::-1]])
        if roots is None:
            return [p]
        n = len(roots)
        for i in range(n):
            for j in range(i + 1, n):
                s = roots[i] + roots[j]
                pr = roots[i] * roots[j]
                if abs(mpmath.im(s)) > 1e-20 or abs(mpmath.im(pr)) > 1e-20:
                    continue
                sl, pl = mpmath.re(s) * L, mpmath.re(pr) * L
                si, pi = int(mpmath.nint(sl)), int(mpmath.nint(pl))
                if abs(sl - si) > 1e-12 or abs(pl - pi) > 1e-12:
                    continue
                quad = UniPoly([Fraction(pi, L), Fraction(-si, L), 1], p.var)
                q, r = p.divmod(quad)
                if r.is_zero():
                    return [quad.primitive()] + _quadratic_split(q.primitive())
    return [p]


def _quadratic_closed_roots(q: UniPoly) -> list[QuadSurd]:
    c, b, a = q.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    k, d = sqrt_rational(disc)
    r1 = QuadSurd(-b / (2 * a), -k / (2 * a), d)
    r2 = QuadSurd(-b / (2 * a), k / (2 * a), d)
    return sorted([r1, r2], key=float)


def isolate_real_roots(p: UniPoly) -> list[AlgebraicNumber]:
    """One AlgebraicNumber per distinct real root of p, in increasing order,
    with pairwise disjoint isolating intervals."""
    if p.is_zero():
        raise ArithmeticError("root isolation of the zero polynomial")
    sq = squarefree_part(p)
    if sq.degree <= 0:
        return []
    out: list[AlgebraicNumber] = []
    rest = sq
    for r in rational_roots(sq):
        out.append(AlgebraicNumber.rational(r))
        rest = rest.exact_div(UniPoly([-r, 1], sq.var))
    rest = rest.primitive()
    if rest.degree >= 2:
        for piece in _quadratic_split(rest):
            out.extend(_roots_of_piece(piece))
    out = sort_numbers(out)
    return _make_disjoint(out)


def _roots_of_piece(piece: UniPoly) -> list[AlgebraicNumber]:
    piece = piece.with_var("x")
    ivs = [iv for iv in _isolate_int(piece.integer_coeffs())]
    closed = _quadratic_closed_roots(piece) if piece.degree == 2 else []
    res = []
    for k, (lo, hi) in enumerate(ivs):
        cf = closed[k] if len(closed) == len(ivs) else None
        res.append(AlgebraicNumber(piece, lo, hi, cf))
    return res


def _make_disjoint(nums: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    nums = list(nums)
    changed = True
    while changed:
        changed = False
        for i in range(len(nums) - 1):
            a, b = nums[i], nums[i + 1]
            if a.hi >= b.lo:
                if not a.is_rational():
                    a = a.refine(a.width / 2)
                if not b.is_rational():
                    b = b.refine(b.width / 2)
                nums[i], nums[i + 1] = a, b
                changed = True
    return nums


def refine(a: AlgebraicNumber, width) -> AlgebraicNumber:
    return a.refine(width)


def real_roots_float(p: UniPoly) -> list[float]:
    """Numeric real roots (companion matrix) for quick plotting work."""
    if p.degree <= 0:
        return []
    c = np.array([float(v) for v in p.coeffs[::-1]])
    r = np.roots(c)
    return sorted(float(v.real) for v in r if abs(v.imag) <= 1e-9 * max(1.0, abs(v)))
