"""Discretization of the intersection curve between critical x-values.

Each open interval between consecutive critical x-values is sampled; the
real roots of S(alpha, y) are counted exactly and located numerically,
then lifted to space.  Arcs from neighbouring intervals are joined at
the exact singular and boundary points above each critical value.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
import math

import mpmath
import numpy as np

from .algebra.bipoly import BiPoly
from .algebra.roots import AlgebraicNumber, _isolate_int, polish_roots
from .algebra.unipoly import UniPoly
from .cutcurve import CutcurveAnalysis
from .elimination import EliminationBundle, MonicZPair
from .errors import BranchCountError
from .lifting import QUAD_F, S1_FORMULA, LiftedPoint, critical_x_values, lift, split_vertical

DEFAULT_SAMPLES = 20
_LIMIT_DPS = 30
_MATCH_TOL = 1e-3


@dataclass
class Polyline:
    points: list[LiftedPoint] = field(default_factory=list)
    closed: bool = False
    anchors: list[str] = field(default_factory=list)  # labels of joined anchor points


@dataclass
class TraceResult:
    branches: list[Polyline]
    isolated: list[LiftedPoint]
    critical_x: list[AlgebraicNumber]
    intervals: int


@dataclass
class _Arc:
    points: list[LiftedPoint]
    start: int | None = None
    end: int | None = None


# --- numeric helpers ------------------------------------------------------

def _poly_float(p: UniPoly) -> list[float]:
    return [float(c) for c in p.coeffs]


def _newton_y(coeffs: list[float], y: float, lo: float, hi: float) -> float:
    # coeffs ascending
    d = [i * c for i, c in enumerate(coeffs)][1:]
    for _ in range(3):
        fv = sum(c * y ** i for i, c in enumerate(coeffs))
        dv = sum(c * y ** i for i, c in enumerate(d))
        if dv == 0:
            break
        ny = y - fv / dv
        if not (lo <= ny <= hi):
            break
        y = ny
    return y


def _horner(coeffs: list[float], y: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def _bisect(coeffs: list[float], lo: float, hi: float) -> float:
    slo = _horner(coeffs, lo)
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        sm = _horner(coeffs, mid)
        if sm == 0:
            return mid
        if (sm > 0) == (slo > 0):
            lo, slo = mid, sm
        else:
            hi = mid
    return (lo + hi) / 2


def _roots_in_intervals(Sa: UniPoly, boxes) -> list[float]:
    """One float root per exact isolating interval."""
    c = _poly_float(Sa)
    num = np.roots(c[::-1]) if len(c) > 1 else np.array([])
    cand = sorted(float(r.real) for r in num if abs(r.imag) <= 1e-7 * (1 + abs(r)))
    out = []
    for lo, hi in boxes:
        if lo == hi:
            out.append(float(lo))
            continue
        flo, fhi = float(lo), float(hi)
        inside = [r for r in cand if flo <= r <= fhi]
        y = inside[0] if len(inside) == 1 else _bisect(c, flo, fhi)
        out.append(_newton_y(c, y, flo, fhi))
    return out


class _FloatPair:
    """Double-precision evaluators for f, g and their y-derivatives."""

    def __init__(self, pair: MonicZPair):
        def terms(P: BiPoly):
            return [(i, j, float(c)) for (i, j), c in P.terms.items()]

        self.polys = [terms(P) for P in (pair.p1, pair.p0, pair.q1, pair.q0)]
        self.dys = [terms(P.diff("y")) for P in (pair.p1, pair.p0, pair.q1, pair.q0)]

    @staticmethod
    def _ev(t, x, y):
        return sum(c * x ** i * y ** j for i, j, c in t)

    def values(self, x, y):
        return [self._ev(t, x, y) for t in self.polys]

    def dy(self, x, y):
        return [self._ev(t, x, y) for t in self.dys]

    def fg(self, x, y, z):
        p1, p0, q1, q0 = self.values(x, y)
        return z * z + p1 * z + p0, z * z + q1 * z + q0


def _lift_float(fp: _FloatPair, x: float, y: float, sheet: int | None) -> LiftedPoint | None:
    """Lift one sample; sheet selects a root of f when on the line."""
    p1, p0, q1, q0 = fp.values(x, y)
    if sheet is None:
        if q1 == p1:
            return None
        z = (p0 - q0) / (q1 - p1)
        src = S1_FORMULA
    else:
        disc = max(p1 * p1 - 4 * p0, 0.0)
        z = (-p1 + sheet * math.sqrt(disc)) / 2
        src = QUAD_F
    y, z = _polish(fp, x, y, z, fix_y=sheet is not None)
    return LiftedPoint(x, y, z, src)


def _polish(fp: _FloatPair, x: float, y: float, z: float, fix_y: bool = False):
    """Newton on (f, g) in (y, z) at fixed x; steps that do not reduce the
    residual are rejected."""
    f, g = fp.fg(x, y, z)
    res = max(abs(f), abs(g))
    for _ in range(3):
        if res == 0:
            break
        p1, _, q1, _ = fp.values(x, y)
        d1, d0, e1, e0 = fp.dy(x, y)
        fy, gy = d1 * z + d0, e1 * z + e0
        fz, gz = 2 * z + p1, 2 * z + q1
        if fix_y:
            if fz == 0:
                break
            ny, nz = y, z - f / fz
        else:
            det = fy * gz - fz * gy
            if det == 0:
                break
            ny = y - (f * gz - fz * g) / det
            nz = z - (fy * g - f * gy) / det
        nf, ng = fp.fg(x, ny, nz)
        nres = max(abs(nf), abs(ng))
        if not nres < res:
            break
        y, z, f, g, res = ny, nz, nf, ng, nres
    return y, z


def _sample_positions(a: float, b: float, n: int, open_left: bool, open_right: bool) -> list[Fraction]:
    """Rational sample abscissae strictly inside (a, b); an outer window
    includes its far edge."""
    width = b - a
    k = max(20, int(math.ceil(-math.log2(width / (100 * n)))) if width > 0 else 60)
    scale = 1 << k
    out = []
    for j in range(n):
        if open_left:
            v = b - width * ((n - j) / n)
        elif open_right:
            v = a + width * ((j + 1) / n)
        else:
            v = a + width * ((2 * j + 1) / (2 * n))
        out.append(Fraction(round(v * scale), scale))
    return out


# --- per-interval sampling ------------------------------------------------

@dataclass
class _Interval:
    lo: AlgebraicNumber | None
    hi: AlgebraicNumber | None
    alphas: list[Fraction]
    ys: list[list[float]]  # per sample, sorted roots
    kinds: list[str]  # per branch index: "s1" | "line"
    sheets: dict = field(default_factory=dict)  # line branch index -> list of kept sheets


def _line_y(line: BiPoly, x: Fraction) -> Fraction | None:
    a, b, c = line.coeff(1, 0), line.coeff(0, 1), line.coeff(0, 0)
    if b == 0:
        return None
    return -(a * x + c) / b


def _sample_interval(S: BiPoly, pair: MonicZPair, bundle: EliminationBundle, conic_case: bool,
                     line_in: bool, alphas: list[Fraction]) -> _Interval:
    ys, counts = [], []
    for al in alphas:
        Sa = S.at_x(al)
        boxes = _isolate_int(Sa.integer_coeffs()) if Sa.degree > 0 else []
        counts.append(len(boxes))
        ys.append(_roots_in_intervals(Sa, boxes) if boxes else [])
    if len(set(counts)) > 1:
        raise BranchCountError(
            f"branch count changes inside an interval ({sorted(set(counts))}); "
            "critical values must be recomputed")
    n = counts[0] if counts else 0
    mid = len(alphas) // 2
    kinds = ["s1"] * n
    sheets = {}
    if n:
        al = alphas[mid]
        Sa = S.at_x(al)
        boxes = _isolate_int(Sa.integer_coeffs())
        line_idx = set()
        if conic_case:
            line_idx = set(range(n))
        elif line_in:
            yl = _line_y(bundle.line, al)
            if yl is not None:
                for k, (lo, hi) in enumerate(boxes):
                    if lo <= yl <= hi and Sa(yl) == 0:
                        line_idx.add(k)
        d1 = bundle.delta1.at_x(al)
        for k in sorted(line_idx):
            kinds[k] = "line"
            lo, hi = boxes[k]
            if lo == hi:
                s = d1.sign_at(lo)
            else:
                s = AlgebraicNumber(Sa, lo, hi).sign_of(d1)
            # a discriminant vanishing at a generic sample vanishes on the
            # whole component, which then carries one double sheet
            sheets[k] = [-1, 1] if s > 0 else [0] if s == 0 else []
    iv = _Interval(None, None, alphas, ys, kinds, sheets)
    # exact line ordinates replace the numeric ones on line branches
    if line_in and not conic_case:
        for k, kind in enumerate(kinds):
            if kind == "line":
                for j, al in enumerate(alphas):
                    ys[j][k] = float(_line_y(bundle.line, al))
    return iv


def _fiber_roots(S: BiPoly, x, n: int):
    """The n most nearly real roots of S(x, y), sorted (high precision)."""
    with mpmath.workdps(_LIMIT_DPS):
        coeffs = [_mp_eval(cy, x) for cy in S.y_coeffs()]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) <= 1:
            return None
        roots = _newton_roots(coeffs)
        if roots is None:
            roots = polish_roots(coeffs[::-1], extraprec=20)
        if roots is None:
            return None
        roots = sorted(roots, key=lambda r: abs(mpmath.im(r)))[:n]
        if len(roots) < n:
            return None
        return sorted(mpmath.re(r) for r in roots)


def _newton_roots(coeffs):
    """Roots by Newton from double-precision seeds; None when seeds are
    clustered (Newton could merge them) or fail to converge."""
    lead = max(abs(c) for c in coeffs)
    seeds = np.roots([float(c / lead) for c in coeffs[::-1]])
    if len(seeds) != len(coeffs) - 1 or not np.all(np.isfinite(seeds)):
        return None
    for i in range(len(seeds)):
        for j in range(i + 1, len(seeds)):
            if abs(seeds[i] - seeds[j]) < 1e-5 * (1 + abs(seeds[i])):
                return None
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    tol = mpmath.mpf(10) ** (-(_LIMIT_DPS - 5))
    out = []
    for s0 in seeds:
        r = mpmath.mpc(complex(s0))
        for _ in range(30):
            f = mpmath.polyval(coeffs[::-1], r)
            d = mpmath.polyval(deriv[::-1], r)
            if d == 0:
                return None
            step = f / d
            r -= step
            if abs(step) <= tol * (1 + abs(r)):
                break
        else:
            return None
        out.append(r)
    return out


def _limit_point(pair: MonicZPair, x, roots, k: int, kind: str,
                 sheet: int | None, bundle: EliminationBundle) -> LiftedPoint | None:
    """Point of branch k above x (near a critical value), at high precision."""
    with mpmath.workdps(_LIMIT_DPS):
        if kind == "line" and not bundle.line.is_zero():
            a, b, cc = (mpmath.mpf(v.numerator) / v.denominator
                        for v in (bundle.line.coeff(1, 0), bundle.line.coeff(0, 1),
                                  bundle.line.coeff(0, 0)))
            y = -(a * x + cc) / b
        else:
            if roots is None:
                return None
            y = roots[k]
        p1, p0 = _mp_bi(pair.p1, x, y), _mp_bi(pair.p0, x, y)
        q1, q0 = _mp_bi(pair.q1, x, y), _mp_bi(pair.q0, x, y)
        if sheet is None:
            den = q1 - p1
            if den == 0:
                return None
            z = (p0 - q0) / den
        else:
            disc = p1 * p1 - 4 * p0
            if disc < 0:
                disc = mpmath.mpf(0)
            z = (-p1 + sheet * mpmath.sqrt(disc)) / 2
        if not all(mpmath.isfinite(v) for v in (x, y, z)):
            return None
        return LiftedPoint(float(x), float(y), float(z), QUAD_F if sheet is not None else S1_FORMULA)


def _mp_eval(p: UniPoly, x):
    acc = mpmath.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _mp_bi(P: BiPoly, x, y):
    acc = mpmath.mpf(0)
    for (i, j), c in P.terms.items():
        acc += mpmath.mpf(c.numerator) / c.denominator * x ** i * y ** j
    return acc


# --- graph -----------------------------------------------------------------

class _Graph:
    def __init__(self):
        self.nodes: list[LiftedPoint] = []
        self.labels: list[tuple[str, ...]] = []
        self.singular: list[bool] = []
        self.anchor_ids: dict[int, int] = {}

    def add(self, pt: LiftedPoint, labels=(), singular=False) -> int:
        self.nodes.append(pt)
        self.labels.append(tuple(labels))
        self.singular.append(singular)
        return len(self.nodes) - 1


def _dist(a: LiftedPoint, b: LiftedPoint) -> float:
    return max(abs(a.x - b.x), abs(a.y - b.y), abs(a.z - b.z))


def _near(a: LiftedPoint, b: LiftedPoint) -> bool:
    scale = 1 + max(abs(b.x), abs(b.y), abs(b.z))
    return _dist(a, b) <= _MATCH_TOL * scale


def _attach(graph: _Graph, ends, anchor_nodes: list[int]):
    """ends: list of (arc, side, limit point).  Matches each end to the
    nearest anchor node or clusters the unmatched ones."""
    loose = []
    for arc, side, pt in ends:
        if pt is None:
            continue
        best, bd = None, None
        for nid in anchor_nodes:
            node = graph.nodes[nid]
            if _near(pt, node):
                d = _dist(pt, node)
                if bd is None or d < bd:
                    best, bd = nid, d
        if best is not None:
            _set_end(arc, side, best)
        else:
            loose.append((arc, side, pt))
    clusters: list[list] = []
    for item in loose:
        for cl in clusters:
            if _near(item[2], cl[0][2]):
                cl.append(item)
                break
        else:
            clusters.append([item])
    for cl in clusters:
        pt = cl[0][2]
        if len(cl) == 1 and max(abs(pt.x), abs(pt.y), abs(pt.z)) > 1e8:
            continue  # escapes to infinity: open end
        # a genuine curve point next to the critical fiber, not an average
        nid = graph.add(pt)
        for arc, side, _ in cl:
            _set_end(arc, side, nid)


def _set_end(arc: _Arc, side: int, nid: int):
    if side == 0:
        arc.start = nid
    else:
        arc.end = nid


def _chains(arcs: list[_Arc], graph: _Graph) -> list[Polyline]:
    inc = defaultdict(list)
    for i, a in enumerate(arcs):
        if a.start is not None:
            inc[a.start].append((i, 0))
        if a.end is not None:
            inc[a.end].append((i, 1))
    used = [False] * len(arcs)

    def oriented(i: int, from_side: int):
        a = arcs[i]
        pts = a.points if from_side == 0 else a.points[::-1]
        far = a.end if from_side == 0 else a.start
        return pts, far

    def walk(i: int, from_side: int, node: int | None) -> Polyline:
        pts: list[LiftedPoint] = []
        labels: list[str] = []
        if node is not None:
            pts.append(graph.nodes[node])
            labels.extend(graph.labels[node])
        start = node
        closed = False
        while True:
            used[i] = True
            seg, far = oriented(i, from_side)
            pts.extend(seg)
            if far is None:
                break
            pts.append(graph.nodes[far])
            labels.extend(graph.labels[far])
            if far == start and start is not None:
                closed = True
                break
            nxt = [(j, s) for j, s in inc[far] if not used[j]]
            if len(inc[far]) != 2 or not nxt:
                break
            i, from_side = nxt[0]
        seen = []
        for lb in labels:
            if lb not in seen:
                seen.append(lb)
        return Polyline(pts, closed, seen)

    out = []
    for i, a in enumerate(arcs):
        if used[i]:
            continue
        for side, node in ((0, a.start), (1, a.end)):
            if not used[i] and (node is None or len(inc[node]) != 2):
                out.append(walk(i, side, node))
    for i, a in enumerate(arcs):
        if not used[i]:
            out.append(walk(i, 0, a.start))
    return out


# --- driver ----------------------------------------------------------------

def collect_anchors(analysis: CutcurveAnalysis, pair: MonicZPair) -> list[tuple]:
    """(planar point, labels, singular?) for singular points in the region
    and boundary points, merged when they coincide."""
    raw = []
    for sp in analysis.singular:
        if sp.in_region:
            raw.append((sp.location, sp.kind, True))
    for bp in analysis.boundary.points:
        raw.append((bp.location, f"boundary-{bp.silhouette}", False))
    merged: list[list] = []
    for loc, label, sing in raw:
        for m in merged:
            if m[0].same_as(loc):
                if label not in m[1]:
                    m[1].append(label)
                m[2] = m[2] or sing
                break
        else:
            merged.append([loc, [label], sing])
    return [(m[0], tuple(m[1]), m[2]) for m in merged]


def _window(crit: list[float]) -> tuple[float, float]:
    if not crit:
        return -1.0, 1.0
    span = crit[-1] - crit[0]
    ext = 1 + 0.1 * span
    return crit[0] - ext, crit[-1] + ext


def trace_branches(bundle: EliminationBundle, pair: MonicZPair, analysis: CutcurveAnalysis,
                   samples: int = DEFAULT_SAMPLES, critical: list[AlgebraicNumber] | None = None
                   ) -> TraceResult:
    """Polyline branches of the intersection curve (normalized coordinates)."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if bundle.degenerate:
        return TraceResult([], [], [], 0)
    crit = critical_x_values(analysis, bundle) if critical is None else critical
    S, vertical = split_vertical(bundle.s0_squarefree)
    cf = [float(c) for c in crit]
    wlo, whi = _window(cf)

    graph = _Graph()
    anchors = collect_anchors(analysis, pair)
    anchor_nodes_at: dict[int, list[int]] = defaultdict(list)
    for loc, labels, sing in anchors:
        xn = loc.x_number()
        idx = next((i for i, c in enumerate(crit) if c == xn), None)
        for lp in lift(loc, pair):
            nid = graph.add(lp, labels, sing)
            if idx is not None:
                anchor_nodes_at[idx].append(nid)

    c_mps = [c.to_mpf(_LIMIT_DPS) for c in crit]
    fp = _FloatPair(pair)
    arcs: list[_Arc] = []
    ends_at: dict[int, list] = defaultdict(list)
    n_int = 0
    if S.deg_y >= 1:
        for t in range(len(crit) + 1):
            li, ri = (t - 1 if t > 0 else None), (t if t < len(crit) else None)
            a = cf[li] if li is not None else wlo
            b = cf[ri] if ri is not None else whi
            alphas = _sample_positions(a, b, samples, li is None, ri is None)
            iv = _sample_interval(S, pair, bundle, analysis.conic_case,
                                  analysis.line_in_cutcurve, alphas)
            n_int += 1
            n = len(iv.kinds)
            near = {}
            for side, ci in ((0, li), (1, ri)):
                if ci is None or n == 0:
                    continue
                other = (cf[ci - 1] if ci > 0 else wlo) if side == 1 else \
                    (cf[ci + 1] if ci + 1 < len(cf) else whi)
                d = min(1e-10 * (1 + abs(cf[ci])), abs(cf[ci] - other) / 10)
                with mpmath.workdps(_LIMIT_DPS):
                    x = c_mps[ci] + (mpmath.mpf(d) if side == 0 else -mpmath.mpf(d))
                near[side] = (x, _fiber_roots(S, x, n))
            for k in range(n):
                sheet_list = [None] if iv.kinds[k] == "s1" else iv.sheets[k]
                for sh in sheet_list:
                    pts = []
                    for j, al in enumerate(alphas):
                        lp = _lift_float(fp, float(al), iv.ys[j][k], sh)
                        if lp is not None:
                            pts.append(lp)
                    arc = _Arc(pts)
                    arcs.append(arc)
                    for side, ci in ((0, li), (1, ri)):
                        if ci is None:
                            continue
                        x, roots = near[side]
                        lim = _limit_point(pair, x, roots, k, iv.kinds[k], sh, bundle)
                        ends_at[ci].append((arc, side, lim))
    for vi, c in enumerate(vertical):
        idx = next(i for i, cc in enumerate(crit) if cc == c)
        arcs_v = _trace_vertical(c, fp, bundle, anchors, samples)
        for arc, ends in arcs_v:
            arcs.append(arc)
            ends_at[idx].extend(ends)
    for ci in range(len(crit)):
        _attach(graph, ends_at[ci], anchor_nodes_at[ci])
    arcs = [a for a in arcs if a.points or (a.start is not None and a.end is not None)]
    branches = _chains(arcs, graph)
    used_nodes = {a.start for a in arcs} | {a.end for a in arcs}
    isolated = [graph.nodes[i] for i in range(len(graph.nodes))
                if graph.singular[i] and i not in used_nodes]
    return TraceResult(branches, isolated, crit, n_int)


def _trace_vertical(c: AlgebraicNumber, fp: _FloatPair, bundle: EliminationBundle,
                    anchors, samples: int):
    """Arcs on a vertical component x = c, sampled in y between anchors."""
    ys = sorted({float(loc.to_float()[1]) for loc, _, _ in anchors if loc.x_number() == c})
    lo, hi = _window(ys)
    cuts = [lo] + ys + [hi]
    xf = float(c)
    out = []
    L = bundle.line
    on_line = not L.is_zero() and L.deg_y == 0 and L.at_y(0).degree == 1 \
        and Fraction(-L.coeff(0, 0), L.coeff(1, 0)) == (c.value if c.is_rational() else None)
    for t in range(len(cuts) - 1):
        a, b = cuts[t], cuts[t + 1]
        grid = [a + (b - a) * (j + 0.5) / samples for j in range(samples)]
        ym = grid[len(grid) // 2]
        if on_line or bundle.line.is_zero():
            d1 = bundle.delta1.eval_float(xf, ym)
            if c.is_rational() and bundle.delta1.at_x(c.value).is_zero():
                sheets = [0]
            elif d1 < 0:
                continue
            else:
                sheets = [-1, 1]
        else:
            sheets = [None]
        for sh in sheets:
            pts = [_lift_float(fp, xf, y, sh) for y in grid]
            arc = _Arc([p for p in pts if p is not None])
            ends = []
            if t > 0:
                ends.append((arc, 0, _end_lift(fp, xf, a, 1, sh)))
            if t < len(cuts) - 2:
                ends.append((arc, 1, _end_lift(fp, xf, b, -1, sh)))
            out.append((arc, ends))
    return out


def _end_lift(fp: _FloatPair, x: float, y: float, inward: int, sheet: int | None):
    """Lift at an arc end, stepping just inside when the lift degenerates there."""
    lp = _lift_float(fp, x, y, sheet)
    if lp is None:
        lp = _lift_float(fp, x, y + inward * 1e-10 * (1 + abs(y)), sheet)
    return lp
