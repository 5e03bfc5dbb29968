"""Input documents, result documents and export formats."""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra.bipoly import BiPoly
from .algebra.roots import AlgebraicNumber
from .errors import ParseError
from .lifting import LiftedPoint
from .pipeline import CurveBranch, IntersectionResult, residual
from .quadric import Quadric

SCHEMA = "quadint.result/1"
FIXTURE_PREFIX = "fixture:"


# --- input -------------------------------------------------------------------

def parse_number(v, where: str) -> Fraction:
    """Exact rational from an int, a decimal or a "p/q" string."""
    if isinstance(v, bool):
        raise ParseError(f"{where}: expected a number, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, Decimal):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                return Fraction(int(num.strip()), int(den.strip()))
            return Fraction(Decimal(s))
        except (ValueError, InvalidOperation, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {v!r} as an exact rational") from None
    raise ParseError(f"{where}: expected a number or a string, got {type(v).__name__}")


def _quadric_from_entry(entry, where: str) -> Quadric:
    if not isinstance(entry, dict):
        raise ParseError(f"{where}: expected an object with 'coefficients' or 'matrix'")
    if "coefficients" in entry:
        c = entry["coefficients"]
        if not isinstance(c, list) or len(c) != 10:
            raise ParseError(f"{where}.coefficients: expected a list of 10 numbers "
                             "(x^2, y^2, z^2, xy, xz, yz, x, y, z, 1)")
        vals = [parse_number(v, f"{where}.coefficients[{i}]") for i, v in enumerate(c)]
        try:
            return Quadric.from_coefficients(vals)
        except ValueError as e:
            raise ParseError(f"{where}: {e}") from None
    if "matrix" in entry:
        m = entry["matrix"]
        if not isinstance(m, list) or len(m) != 4 or any(not isinstance(r, list) or len(r) != 4 for r in m):
            raise ParseError(f"{where}.matrix: expected a 4x4 list of lists")
        vals = [[parse_number(v, f"{where}.matrix[{i}][{j}]") for j, v in enumerate(r)]
                for i, r in enumerate(m)]
        try:
            return Quadric(vals)
        except ValueError as e:
            raise ParseError(f"{where}.matrix: {e}") from None
    raise ParseError(f"{where}: expected a 'coefficients' or 'matrix' field")


def parse_document(text: str) -> tuple[Quadric, Quadric]:
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict) or "quadrics" not in doc:
        raise ParseError("top level: expected an object with a 'quadrics' list")
    qs = doc["quadrics"]
    if not isinstance(qs, list) or len(qs) != 2:
        raise ParseError("quadrics: expected exactly two quadrics")
    return _quadric_from_entry(qs[0], "quadrics[0]"), _quadric_from_entry(qs[1], "quadrics[1]")


def fixture_names() -> list[str]:
    root = resources.files("quadint") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_input(source: str) -> tuple[Quadric, Quadric]:
    """Quadrics from a path or from ``fixture:NAME``."""
    if source.startswith(FIXTURE_PREFIX):
        name = source[len(FIXTURE_PREFIX):]
        if name not in fixture_names():
            raise ParseError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
        text = (resources.files("quadint") / "fixtures" / f"{name}.json").read_text()
        return parse_document(text)
    try:
        text = Path(source).read_text()
    except OSError as e:
        raise ParseError(f"{source}: {e.strerror}") from None
    return parse_document(text)


# --- result document ---------------------------------------------------------

def _q(v: Fraction) -> str:
    return str(v)


def _decimal(v: Fraction, digits: int) -> str:
    q = Fraction(round(v * 10 ** digits), 10 ** digits)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q.numerator * 10 ** digits // q.denominator, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def number_entry(a: AlgebraicNumber, digits: int) -> dict:
    """Exact form plus a decimal value good to 10^-digits."""
    if a.is_rational():
        v = a.value
    else:
        v = a.refine(Fraction(1, 10 ** (digits + 1))).midpoint()
    return {"exact": str(a), "value": _decimal(v, digits), "precision": f"1e-{digits}"}


def _lifted_entry(lp: LiftedPoint, digits: int) -> dict:
    d = {"xyz": [lp.x, lp.y, lp.z], "source": lp.source, "multiplicity": lp.multiplicity}
    if lp.exact is not None:
        d["exact"] = [str(v) for v in lp.exact]
        d["precision"] = "exact"
    else:
        d["precision"] = "float64"
    return d


def _point_entry(loc, digits: int) -> dict:
    return {"x": number_entry(loc.x_number(), digits), "y": number_entry(loc.y_number(), digits)}


def _branch_entry(i: int, b: CurveBranch, res: IntersectionResult) -> dict:
    if b.kind == "parameterized":
        d = {"id": f"b{i}", "kind": "parameterized"}
        d.update(b.param.describe())
        d["coordinates"] = "normalized" if not res.scene.is_identity else "input"
        return d
    worst = max((residual(res.e1, res.e2, p.xyz) for p in b.points), default=0.0)
    return {
        "id": f"b{i}",
        "kind": "polyline",
        "closed": b.closed,
        "anchors": b.anchors,
        "precision": {"max_residual": float(f"{worst:.3e}"), "bound": 1e-9},
        "points": [[p.x, p.y, p.z] for p in b.points],
    }


def build_document(res: IntersectionResult, digits: int = 12, timing: bool = True) -> dict:
    doc: dict = {"schema": SCHEMA}
    doc["input"] = {"quadrics": [{"coefficients": [_q(c) for c in q.coefficients()]}
                                 for q in (res.e1, res.e2)]}
    doc["flags"] = list(res.flags)
    doc["warnings"] = list(res.warnings)
    sc = res.scene
    if sc is not None:
        m = sc.monic
        doc["normalization"] = {
            "transform": [[_q(v) for v in row] for row in sc.M],
            "swapped": sc.swapped,
            "mixed": sc.is_mixed,
        }
        doc["pair"] = {"p1": str(m.p1), "p0": str(m.p0), "q1": str(m.q1), "q0": str(m.q0)}
    b = res.bundle
    if b is not None:
        doc["cutcurve"] = {"s0": str(b.s0), "s0_squarefree": str(b.s0_squarefree)}
        doc["region"] = {"delta1": str(b.delta1), "delta2": str(b.delta2), "line": str(b.line)}
        num, den = res.lifting_formula
        doc["lifting_formula"] = {"numerator": str(num), "denominator": str(den)}
    an = res.analysis
    if an is not None:
        sl = {id(s.point): s for s in res.singular_lifted}
        doc["singular_points"] = []
        for sp in an.singular:
            e = {"kind": sp.kind, "region": sp.region_status, "lift": sp.lift_strategy}
            e.update(_point_entry(sp.location, digits))
            lifted = sl.get(id(sp))
            e["lifted"] = [_lifted_entry(p, digits) for p in lifted.lifted] if lifted else []
            doc["singular_points"].append(e)
        doc["boundary_points"] = []
        for bp in an.boundary.points:
            e = {"silhouette": bp.silhouette}
            e.update(_point_entry(bp.location, digits))
            e["vertex"] = any(v.same_as(bp.location) for v in an.vertices)
            doc["boundary_points"].append(e)
        doc["critical_x"] = [number_entry(c, digits) for c in res.critical_x]
    doc["mode"] = res.mode
    doc["branches"] = [_branch_entry(i, br, res) for i, br in enumerate(res.branches)]
    doc["isolated_points"] = [_lifted_entry(p, digits) for p in res.isolated_points]
    if timing:
        doc["timing_seconds"] = round(res.timing, 6)
    return doc


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# --- polyline exports ----------------------------------------------------------

def export_mesh(branches: list[CurveBranch], isolated: list[LiftedPoint]) -> str:
    """Wavefront OBJ text: one object per branch ('l' records) and one
    single-vertex object per isolated point ('p' records)."""
    out = io.StringIO()
    out.write("# quadint polylines\n")
    k = 1
    for i, b in enumerate(branches):
        if b.kind != "polyline" or not b.points:
            continue
        out.write(f"o branch_{i}\n")
        idx = []
        for p in b.points:
            out.write(f"v {p.x!r} {p.y!r} {p.z!r}\n")
            idx.append(k)
            k += 1
        if b.closed and len(idx) > 1:
            idx.append(idx[0])
        if len(idx) > 1:
            out.write("l " + " ".join(map(str, idx)) + "\n")
        else:
            out.write(f"p {idx[0]}\n")
    for i, p in enumerate(isolated):
        out.write(f"o isolated_{i}\n")
        out.write(f"v {p.x!r} {p.y!r} {p.z!r}\n")
        out.write(f"p {k}\n")
        k += 1
    return out.getvalue()


def export_table(branches: list[CurveBranch], isolated: list[LiftedPoint]) -> str:
    """CSV with one row per point: branch id, x, y, z."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["branch", "x", "y", "z"])
    for i, b in enumerate(branches):
        if b.kind != "polyline":
            continue
        for p in b.points:
            w.writerow([f"b{i}", repr(p.x), repr(p.y), repr(p.z)])
    for i, p in enumerate(isolated):
        w.writerow([f"p{i}", repr(p.x), repr(p.y), repr(p.z)])
    return out.getvalue()


def read_table(text: str) -> dict[str, list[tuple[float, float, float]]]:
    rows = csv.reader(io.StringIO(text))
    header = next(rows, None)
    if header != ["branch", "x", "y", "z"]:
        raise ParseError("table: expected header branch,x,y,z")
    out: dict[str, list] = {}
    for n, r in enumerate(rows, start=2):
        if len(r) != 4:
            raise ParseError(f"table line {n}: expected 4 fields")
        try:
            out.setdefault(r[0], []).append((float(r[1]), float(r[2]), float(r[3])))
        except ValueError:
            raise ParseError(f"table line {n}: bad number") from None
    return out


# --- 2D plot data ---------------------------------------------------------------

def _curve_samples(P: BiPoly, bounds, resolution: int) -> list[tuple[float, float]]:
    xmin, xmax, ymin, ymax = bounds
    pts = []
    if P.is_zero() or P.is_constant():
        return pts
    ycs = [[float(c) for c in cy.coeffs] for cy in P.y_coeffs()]
    xcs = [[float(c) for c in cx.coeffs] for cx in P.swap().y_coeffs()]

    def roots(coeffs_by_power, t):
        vals = [float(np.polyval(c[::-1], t)) if c else 0.0 for c in coeffs_by_power]
        while len(vals) > 1 and vals[-1] == 0:
            vals.pop()
        if len(vals) <= 1:
            return []
        r = np.roots(vals[::-1])
        return [float(v.real) for v in r if abs(v.imag) <= 1e-9 * (1 + abs(v))]

    for k in range(resolution + 1):
        x = xmin + (xmax - xmin) * k / resolution
        pts += [(x, y) for y in roots(ycs, x) if ymin <= y <= ymax]
        y = ymin + (ymax - ymin) * k / resolution
        pts += [(x2, y) for x2 in roots(xcs, y) if xmin <= x2 <= xmax]
    return sorted(set(pts))


def default_bounds(res: IntersectionResult) -> tuple[float, float, float, float]:
    an = res.analysis
    xs, ys = [], []
    if an is not None:
        for loc in [s.location for s in an.singular] + [b.location for b in an.boundary.points]:
            x, y = loc.to_float()
            xs.append(x)
            ys.append(y)
    if not xs:
        return (-5.0, 5.0, -5.0, 5.0)
    pad = 1 + 0.25 * max(max(xs) - min(xs), max(ys) - min(ys))
    return (min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)


def emit_plot2d(res: IntersectionResult, bounds=None, resolution: int = 200) -> str:
    """Tab-separated layers: cutcurve (with region flag), both silhouettes,
    the line p1 = q1, a region grid and the marked special points."""
    if res.bundle is None or res.analysis is None:
        raise ValueError("plot data needs a completed cutcurve analysis")
    bounds = tuple(float(v) for v in (bounds or default_bounds(res)))
    xmin, xmax, ymin, ymax = bounds
    if not (xmin < xmax and ymin < ymax):
        raise ValueError("empty plot bounds")
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    b, an = res.bundle, res.analysis
    region = an.region
    out = io.StringIO()
    out.write("# quadint plot2d 1\n")
    out.write(f"# bounds\t{xmin!r}\t{xmax!r}\t{ymin!r}\t{ymax!r}\n")
    out.write(f"# resolution\t{resolution}\n")
    out.write("# coordinates\tnormalized\n")
    for name, P in (("cutcurve", b.s0_squarefree), ("silhouette1", b.delta1),
                    ("silhouette2", b.delta2), ("line", b.line)):
        out.write(f"## layer\t{name}\n")
        cols = "x\ty\tin_region" if name == "cutcurve" else "x\ty"
        out.write(f"#{cols}\n")
        for x, y in _curve_samples(P, bounds, resolution):
            if name == "cutcurve":
                flag = int(region.contains_float(x, y, tol=1e-9))
                out.write(f"{x!r}\t{y!r}\t{flag}\n")
            else:
                out.write(f"{x!r}\t{y!r}\n")
    out.write("## layer\tregion_grid\n#x\ty\tin_region\n")
    for i in range(resolution + 1):
        x = xmin + (xmax - xmin) * i / resolution
        for j in range(resolution + 1):
            y = ymin + (ymax - ymin) * j / resolution
            out.write(f"{x!r}\t{y!r}\t{int(region.contains_float(x, y))}\n")
    out.write("## layer\tpoints\n#label\tx\ty\n")
    for k, sp in enumerate(an.singular):
        x, y = sp.location.to_float()
        out.write(f"{sp.kind}-{k}\t{x!r}\t{y!r}\n")
    for k, bp in enumerate(an.boundary.points):
        x, y = bp.location.to_float()
        out.write(f"boundary{bp.silhouette}-{k}\t{x!r}\t{y!r}\n")
    return out.getvalue()


def read_plot2d(text: str) -> dict[str, list[list[str]]]:
    """Layers of a plot2d file as rows of string fields."""
    layers: dict[str, list] = {}
    cur = None
    for line in text.splitlines():
        if line.startswith("## layer\t"):
            cur = line.split("\t", 1)[1]
            layers[cur] = []
        elif line.startswith("#") or not line:
            continue
        elif cur is not None:
            layers[cur].append(line.split("\t"))
    return layers
