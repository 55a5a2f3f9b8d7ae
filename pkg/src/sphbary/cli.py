"""Command-line front end.

Subcommands: validate, coords, grid, compare, random, oracle.  Exit codes:
0 on success, 1 on a domain error (the machine-readable error name is the
first token after "error:" on stderr), 2 on usage errors.  All output is a
pure function of the inputs and the seed, so repeated runs are byte
identical.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import SphBaryError
from .geom import DEFAULT_TOL, Tolerances, normalize
from .harness import (
    DEFAULT_BANDS,
    METHODS,
    PolygonFile,
    compare_methods,
    evaluate,
    evaluate_extended,
    grid_rows,
    load_polygon_file,
    oracle_triangle,
    random_polygon,
    rows_to_csv,
    save_polygon_file,
)
from .spherical import reconstruction_residual


def _fmt(v: float) -> str:
    return repr(float(v))


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_bands(levels: str):
    bands = []
    for chunk in levels.split(","):
        lo, hi = (float(t) for t in chunk.split(":"))
        bands.append((min(lo, hi), max(lo, hi)))
    return tuple(bands)


def cmd_validate(args, tol: Tolerances) -> int:
    pf = load_polygon_file(args.file)
    polygon = pf.validated(tol)
    shape = "convex" if polygon.convex else "non-convex"
    print(f"valid, {shape}, n={polygon.n}")
    w = polygon.witness
    print(f"hemisphere witness = ({_fmt(w[0])}, {_fmt(w[1])}, {_fmt(w[2])})")
    print("orientation: anti-clockwise (winding +2*pi)")
    return 0


def cmd_coords(args, tol: Tolerances) -> int:
    pf = load_polygon_file(args.file)
    x = normalize(np.array(args.point, dtype=float), tol)
    if args.extended:
        if args.method != "NEW_MV":
            print("error: --extended evaluation supports only NEW_MV", file=sys.stderr)
            return 2
        ring = np.array([normalize(v, tol) for v in np.asarray(pf.vertices, dtype=float)])
        cv = evaluate_extended(ring, x, tol)
        vertices = ring
    else:
        polygon = pf.validated(tol)
        cv = evaluate(polygon, x, args.method, tol=tol)
        vertices = polygon.vertices
    print(f"location: {cv.location}")
    print(f"method: {cv.method}")
    for i, v in enumerate(cv.values):
        print(f"psi[{i}] = {_fmt(v)}")
    print(f"sum = {_fmt(cv.total)}")
    print(f"residual = {_fmt(reconstruction_residual(cv.values, vertices, x))}")
    if cv.denom is not None:
        print(f"denominator = {_fmt(cv.denom)}")
    return 0


def cmd_grid(args, tol: Tolerances) -> int:
    pf = load_polygon_file(args.file)
    polygon = pf.validated(tol)
    if not 0 <= args.vertex < polygon.n:
        print(f"error: vertex index {args.vertex} out of range for n={polygon.n}", file=sys.stderr)
        return 2
    bands = _parse_bands(args.levels) if args.levels else DEFAULT_BANDS
    rows = grid_rows(polygon, args.vertex, args.resolution, args.method, bands, tol)
    _write(rows_to_csv(rows), args.output)
    return 0


def cmd_compare(args, tol: Tolerances) -> int:
    pf = load_polygon_file(args.file)
    polygon = pf.validated(tol)
    a, b = args.methods
    report = compare_methods(polygon, a, b, args.resolution, tol)
    print(report.to_text())
    if args.csv:
        chunks = []
        for method in (a, b):
            for k in range(polygon.n):
                chunks.extend(grid_rows(polygon, k, args.resolution, method, DEFAULT_BANDS, tol))
        _write(rows_to_csv(chunks), args.csv)
    return 0


def cmd_random(args, tol: Tolerances) -> int:
    if not 3 <= args.n <= 64:
        print(f"error: n must be in [3, 64], got {args.n}", file=sys.stderr)
        return 2
    if not 0.0 < args.rho < np.pi / 2:
        print(f"error: rho must be in (0, pi/2), got {args.rho}", file=sys.stderr)
        return 2
    mode = "nonconvex" if args.nonconvex else "convex"
    polygon = random_polygon(args.n, args.rho, args.seed, mode, tol)
    pf = PolygonFile(
        vertices=[[float(c) for c in v] for v in polygon.vertices],
        name=args.name,
        seed=args.seed,
    )
    if args.output:
        save_polygon_file(args.output, pf)
    else:
        import json

        data = {"name": pf.name, "seed": pf.seed, "vertices": pf.vertices}
        if pf.name is None:
            del data["name"]
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    return 0


def cmd_oracle(args, tol: Tolerances) -> int:
    pf = load_polygon_file(args.file)
    if len(pf.vertices) != 3:
        print(f"error: oracle needs a triangle file, got n={len(pf.vertices)}", file=sys.stderr)
        return 2
    v = [normalize(np.asarray(row, dtype=float), tol) for row in pf.vertices]
    x = normalize(np.array(args.point, dtype=float), tol)
    psi = oracle_triangle(v[0], v[1], v[2], x)
    for i, val in enumerate(psi):
        print(f"psi[{i}] = {_fmt(val)}")
    print(f"residual = {_fmt(float(np.linalg.norm(psi @ np.array(v) - x)))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphbary",
        description="Barycentric coordinates of points on the unit sphere "
        "with respect to spherical polygons.",
    )
    parser.add_argument("--tol", type=float, default=None, metavar="EPS",
                        help="override the geometric tolerance band (angles get 10x this)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the random subcommand")
    parser.add_argument("--extended", action="store_true",
                        help="evaluate outside the default domain: skip polygon validation "
                             "and the interior check (coords, NEW_MV only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a polygon file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("coords", help="evaluate coordinates at one point")
    p.add_argument("file")
    p.add_argument("--point", type=float, nargs=3, required=True, metavar=("X", "Y", "Z"))
    p.add_argument("--method", choices=METHODS, default="NEW_MV")
    p.add_argument("--extended", action="store_true", default=argparse.SUPPRESS,
                   help="same as the global --extended flag")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("grid", help="sample a coordinate over the polygon, CSV output")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, default=0, help="vertex index k whose psi_k is tabulated")
    p.add_argument("--resolution", type=int, default=16)
    p.add_argument("--method", choices=METHODS, default="NEW_MV")
    p.add_argument("--levels", default=None,
                   help="contour bands lo:hi[,lo:hi...]; default is the shipped six bands")
    p.add_argument("--output", default=None, help="CSV path (stdout when omitted)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("compare", help="max/mean gap between two methods on a grid")
    p.add_argument("file")
    p.add_argument("--methods", nargs=2, choices=METHODS, required=True, metavar=("A", "B"))
    p.add_argument("--resolution", type=int, default=24)
    p.add_argument("--csv", default=None, help="also dump per-point rows to this CSV path")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("random", help="deterministic seeded random polygon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="same as the global --seed flag")
    p.add_argument("--rho", type=float, default=0.8, help="cap radius bound in (0, pi/2)")
    p.add_argument("--nonconvex", action="store_true",
                   help="produce a polygon with at least one reflex vertex")
    p.add_argument("--name", default=None)
    p.add_argument("--output", default=None, help="polygon JSON path (stdout when omitted)")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("oracle", help="3x3 elimination oracle for triangles")
    p.add_argument("file")
    p.add_argument("--point", type=float, nargs=3, required=True, metavar=("X", "Y", "Z"))
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "grid" and args.resolution < 8:
        parser.error(f"--resolution must be >= 8, got {args.resolution}")
    tol = DEFAULT_TOL if args.tol is None else DEFAULT_TOL.scaled_to(args.tol)
    try:
        return args.func(args, tol)
    except SphBaryError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
