"""Command line entry point."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InconsistencyError, ParseError, UnsupportedCaseError
from .io import (build_document, dumps_document, emit_plot2d, export_mesh, export_table,
                 read_input)
from .pipeline import AUTO, DISCRETIZE, PARAMETERIZE, discretize, intersect, require_supported
from .tracing import DEFAULT_SAMPLES

EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_INCONSISTENT = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quadint",
        description="Intersection curve of two quadric surfaces given by exact rational coefficients.",
    )
    ap.add_argument("input", help="JSON input file, or fixture:NAME for a bundled example")
    ap.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                    help="points per interval between critical x-values (default %(default)s)")
    ap.add_argument("--precision", type=int, default=12,
                    help="decimal digits for algebraic numbers in the output (default %(default)s)")
    g = ap.add_mutually_exclusive_group()
    g.add_argument("--parameterize", action="store_true", help="ask for a closed form")
    g.add_argument("--discretize", action="store_true", help="always trace polylines")
    ap.add_argument("--no-transform", action="store_true",
                    help="do not apply a coordinate change when no input is usable as is")
    ap.add_argument("--json", metavar="PATH", help="write the result document here instead of stdout")
    ap.add_argument("--mesh", metavar="PATH", help="write polylines as a Wavefront OBJ file")
    ap.add_argument("--table", metavar="PATH", help="write polyline points as CSV")
    ap.add_argument("--plot2d", metavar="PATH", help="write planar plot layers as TSV")
    ap.add_argument("--plot-resolution", type=int, default=200, help=argparse.SUPPRESS)
    ap.add_argument("--no-timing", action="store_true", help="omit the timing field")
    return ap


def run(args) -> int:
    if args.samples < 2:
        raise ParseError("--samples: must be at least 2")
    if args.precision < 1:
        raise ParseError("--precision: must be at least 1")
    e1, e2 = read_input(args.input)
    require_supported(e1, e2)
    mode = PARAMETERIZE if args.parameterize else DISCRETIZE if args.discretize else AUTO
    res = intersect(e1, e2, samples=args.samples, mode=mode,
                    allow_transform=not args.no_transform)

    polylines = [b for b in res.branches if b.kind == "polyline"]
    if (args.mesh or args.table) and res.mode == "parameterized":
        polylines = discretize(res)
        res.warnings.append(f"polyline export: the closed form was discretized "
                            f"with {res.samples} samples per interval")
    if args.mesh:
        Path(args.mesh).write_text(export_mesh(polylines, res.isolated_points))
    if args.table:
        Path(args.table).write_text(export_table(polylines, res.isolated_points))
    if args.plot2d:
        if res.analysis is None:
            res.warnings.append("plot data skipped: no cutcurve analysis")
        else:
            Path(args.plot2d).write_text(emit_plot2d(res, resolution=args.plot_resolution))

    for w in res.warnings:
        print(f"quadint: warning: {w}", file=sys.stderr)
    text = dumps_document(build_document(res, args.precision, timing=not args.no_timing))
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ParseError as e:
        print(f"quadint: input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedCaseError as e:
        print(f"quadint: unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InconsistencyError as e:
        print(f"quadint: internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
