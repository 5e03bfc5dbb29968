"""End-to-end intersection of two quadrics."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.bipoly import BiPoly
from .algebra.surd import QuadSurd
from .cutcurve import CutcurveAnalysis, SingularPoint, analyze_cutcurve
from .elimination import EliminationBundle, compute_bundle
from .errors import UnsupportedCaseError
from .lifting import LiftedPoint, critical_x_values, lift
from .parameterize import Parameterization, ParamBranch, try_parameterize
from .quadric import NormalizedScene, Quadric, normalize
from .tracing import DEFAULT_SAMPLES, trace_branches

IDENTICAL = "identical quadrics"
SHARED = "shared component"
EMPTY = "empty intersection"

AUTO, PARAMETERIZE, DISCRETIZE = "auto", "parameterize", "discretize"


@dataclass
class CurveBranch:
    """A branch of the intersection curve in input coordinates.

    Polyline branches carry ordered points; parameterized ones carry the
    closed form (in normalized coordinates) and map it back on evaluation.
    """

    kind: str  # "polyline" | "parameterized"
    points: list[LiftedPoint] = field(default_factory=list)
    closed: bool = False
    anchors: list[str] = field(default_factory=list)
    param: ParamBranch | None = None
    scene: NormalizedScene | None = field(default=None, repr=False)

    def evaluate(self, x) -> tuple[float, float, float]:
        """Point of a parameterized branch at parameter x (input coordinates)."""
        if self.param is None:
            raise TypeError("only parameterized branches can be evaluated")
        p = self.param.evaluate(x)
        return _map_float(self.scene, p)


@dataclass
class SingularLift:
    point: SingularPoint
    lifted: list[LiftedPoint]


@dataclass
class IntersectionResult:
    e1: Quadric
    e2: Quadric
    scene: NormalizedScene | None
    bundle: EliminationBundle | None
    analysis: CutcurveAnalysis | None
    mode: str  # "parameterized" | "discretized" | "none"
    branches: list[CurveBranch] = field(default_factory=list)
    isolated_points: list[LiftedPoint] = field(default_factory=list)
    singular_lifted: list[SingularLift] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    parameterization: Parameterization | None = None
    critical_x: list = field(default_factory=list)
    samples: int = DEFAULT_SAMPLES
    timing: float = 0.0

    @property
    def lifting_formula(self) -> tuple[BiPoly, BiPoly] | None:
        """(numerator, denominator) of z = (p0 - q0) / (q1 - p1)."""
        if self.scene is None:
            return None
        m = self.scene.monic
        return m.p0 - m.q0, m.q1 - m.p1

    @property
    def empty(self) -> bool:
        return not (self.branches or self.isolated_points or self.singular_lifted)

    def polyline_points(self) -> list[LiftedPoint]:
        return [p for b in self.branches if b.kind == "polyline" for p in b.points]


def _map_float(scene: NormalizedScene, p) -> tuple[float, float, float]:
    M = scene.M
    return tuple(float(sum(float(M[i][j]) * p[j] for j in range(3)) + float(scene.t[i]))
                 for i in range(3))


def map_lifted(scene: NormalizedScene, lp: LiftedPoint) -> LiftedPoint:
    """A lifted point in input coordinates (exact when it is exact)."""
    if scene.is_identity:
        return lp
    x, y, z = _map_float(scene, lp.xyz)
    exact = None
    if lp.exact is not None:
        try:
            v = lp.exact
            exact = tuple(sum((v[j] * scene.M[i][j] for j in range(3)), QuadSurd(scene.t[i]))
                          for i in range(3))
        except ValueError:
            exact = None  # coordinates in different quadratic fields
    return LiftedPoint(x, y, z, lp.source, lp.multiplicity, exact)


def residual(e1: Quadric, e2: Quadric, pt) -> float:
    """max(|f|, |g|) on coefficient-normalized quadrics, evaluated exactly
    at the given (float) coordinates."""
    q = [Fraction(v) for v in pt]
    return float(max(abs(e1(*q)) / e1.max_abs_coeff(), abs(e2(*q)) / e2.max_abs_coeff()))


def _proportional(a: Quadric, b: Quadric) -> bool:
    ca, cb = a.coefficients(), b.coefficients()
    k = next(i for i, v in enumerate(ca) if v != 0)
    if cb[k] == 0:
        return False
    r = cb[k] / ca[k]
    return all(cb[i] == r * ca[i] for i in range(10))


def _on_param_branch(lp: LiftedPoint, branches: list[ParamBranch]) -> bool:
    for br in branches:
        if not br.in_domain(lp.x):
            continue
        _, y, z = br.evaluate(lp.x)
        scale = 1 + abs(lp.y) + abs(lp.z)
        if abs(y - lp.y) <= 1e-7 * scale and abs(z - lp.z) <= 1e-7 * scale:
            return True
    return False


def intersect(e1: Quadric, e2: Quadric, samples: int = DEFAULT_SAMPLES, mode: str = AUTO,
              allow_transform: bool = True) -> IntersectionResult:
    """Intersection curve of two quadrics.

    ``mode`` is "auto" (closed form when every cutcurve factor has degree
    at most two in y), "parameterize" or "discretize".
    """
    if mode not in (AUTO, PARAMETERIZE, DISCRETIZE):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    if _proportional(e1, e2):
        return IntersectionResult(e1, e2, None, None, None, "none", flags=[IDENTICAL],
                                  samples=samples, timing=time.perf_counter() - t0)
    scene = normalize(e1, e2, allow_transform)
    pair = scene.monic
    bundle = compute_bundle(pair)
    res = IntersectionResult(e1, e2, scene, bundle, None, "none", samples=samples)
    if bundle.degenerate:
        res.flags.append(SHARED)
        res.warnings.append("the quadrics share a component; the curve is not traced")
        res.timing = time.perf_counter() - t0
        return res
    analysis = analyze_cutcurve(bundle, pair)
    res.analysis = analysis
    res.critical_x = critical_x_values(analysis, bundle)

    for sp in analysis.singular:
        if sp.in_region:
            lifted = [map_lifted(scene, lp) for lp in lift(sp.location, pair)]
            res.singular_lifted.append(SingularLift(sp, lifted))

    param = None
    if mode != DISCRETIZE:
        param = try_parameterize(bundle, pair)
        if param is None and mode == PARAMETERIZE:
            res.warnings.append("no closed form (a cutcurve factor has degree >= 3 in y "
                                "or is vertical); discretizing instead")
    if param is not None:
        res.mode = "parameterized"
        res.parameterization = param
        res.branches = [CurveBranch("parameterized", param=b, scene=scene) for b in param.branches]
        for sl in res.singular_lifted:
            if sl.point.kind != "tangential":
                continue
            for lp in lift(sl.point.location, pair):
                if not _on_param_branch(lp, param.branches):
                    res.isolated_points.append(map_lifted(scene, lp))
    else:
        res.mode = "discretized"
        tr = trace_branches(bundle, pair, analysis, samples, res.critical_x)
        for pl in tr.branches:
            res.branches.append(CurveBranch("polyline", [map_lifted(scene, p) for p in pl.points],
                                            pl.closed, pl.anchors, scene=scene))
        res.isolated_points = [map_lifted(scene, p) for p in tr.isolated]
    if res.empty:
        res.flags.append(EMPTY)
    res.timing = time.perf_counter() - t0
    return res


def discretize(result: IntersectionResult, samples: int | None = None) -> list[CurveBranch]:
    """Polyline branches for a result, tracing if it was parameterized."""
    if result.mode == "discretized":
        return [b for b in result.branches if b.kind == "polyline"]
    if result.bundle is None or result.analysis is None or result.bundle.degenerate:
        return []
    scene = result.scene
    tr = trace_branches(result.bundle, scene.monic, result.analysis,
                        samples or result.samples, result.critical_x)
    return [CurveBranch("polyline", [map_lifted(scene, p) for p in pl.points], pl.closed,
                        pl.anchors, scene=scene) for pl in tr.branches]


def require_supported(e1: Quadric, e2: Quadric) -> None:
    if e1.is_planar() and e2.is_planar():
        raise UnsupportedCaseError("both surfaces are planes")
