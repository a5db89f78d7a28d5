"""Batch command-line interface.

One subcommand per workflow: minimum distance, region computation,
membership checks, hyperplane bounds, known-region constructors, and
verification of a region file against a recomputation.  All output is
line-oriented and byte-deterministic; exit codes are a stable contract:

    0  success (cmd_check: demand is servable)
    1  cmd_check: demand is not servable
    2  parse or validation failure
    3  oracle/verification mismatch
    4  projection oracle size limit exceeded
    5  unsupported dimension for a code family
"""

from __future__ import annotations

import argparse
import functools
import sys
from fractions import Fraction
from math import ceil

from .bounds import all_hyperplane_cuts
from .codes import (
    BINARY_SIMPLEX,
    RM_NONSYSTEMATIC,
    RM_SYSTEMATIC,
    known_region,
)
from .errors import OracleTooLarge, UnsupportedK
from .formats import (
    ParseError,
    format_rational,
    parse_matrix,
    parse_polytope,
    parse_rational,
    serialize_polytope,
)
from .geometry import induced_multiset, min_distance_geometric
from .polytope import Polytope, facet_holds, polytope_contains, polytope_equal
from .recovery import build_catalog
from .region import axis_maxima, compute_region, fm_projection_oracle, membership

_FAMILY_NAMES = {
    "simplex": BINARY_SIMPLEX,
    "rm-nonsys": RM_NONSYSTEMATIC,
    "rm-sys": RM_SYSTEMATIC,
}


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_matrix(path: str):
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())


def _load_mu(args, n: int) -> list[Fraction]:
    if args.mu is not None:
        with open(args.mu, "r", encoding="ascii") as fh:
            tokens = fh.read().split()
        rates = [parse_rational(t) for t in tokens]
        if len(rates) != n:
            raise ParseError(f"expected {n} server rates, got {len(rates)}")
        if any(r < 0 for r in rates):
            raise ParseError("server rates must be nonnegative")
        return rates
    uniform = parse_rational(args.uniform) if args.uniform is not None else Fraction(1)
    if uniform < 0:
        raise ParseError("server rates must be nonnegative")
    return [uniform] * n


def _sort_cycle(vertices):
    """Order 2-D vertices counterclockwise around their centroid, exactly."""
    k = len(vertices)
    cx = sum(v[0] for v in vertices) / k
    cy = sum(v[1] for v in vertices) / k

    def halfplane(v):
        dx, dy = v[0] - cx, v[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def compare(a, b):
        ha, hb = halfplane(a), halfplane(b)
        if ha != hb:
            return -1 if ha < hb else 1
        ax, ay = a[0] - cx, a[1] - cy
        bx, by = b[0] - cx, b[1] - cy
        cross = ax * by - ay * bx
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(vertices, key=functools.cmp_to_key(compare))


def _write_plot(poly: Polytope, path: str) -> None:
    lines = []
    if poly.dim == 2:
        cycle = _sort_cycle(list(poly.vertices))
        order = [poly.vertices.index(v) for v in cycle]
        lines.append("CYCLE " + " ".join(str(i) for i in order))
    else:
        for coeffs, rhs in poly.facets:
            tight = [
                str(idx)
                for idx, v in enumerate(poly.vertices)
                if sum(c * x for c, x in zip(coeffs, v)) == rhs
            ]
            lines.append(
                "INC "
                + " ".join(str(c) for c in coeffs)
                + f" {rhs} : "
                + " ".join(tight)
            )
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_mindist(args) -> int:
    try:
        g = _load_matrix(args.gen)
    except (OSError, ParseError) as exc:
        return _fail(str(exc), 2)
    print(f"d={min_distance_geometric(g)}")
    return 0


def cmd_region(args) -> int:
    try:
        g = _load_matrix(args.gen)
        mu = _load_mu(args, g.ncols)
    except (OSError, ParseError) as exc:
        return _fail(str(exc), 2)
    if args.plot is not None and g.nrows not in (2, 3):
        return _fail("--plot is only available for k in {2, 3}", 2)
    catalog = build_catalog(g)
    region = compute_region(catalog, mu)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(serialize_polytope(region))
    if args.plot is not None:
        _write_plot(region, args.plot)
    if args.oracle:
        try:
            reference = fm_projection_oracle(catalog, mu)
        except OracleTooLarge as exc:
            return _fail(str(exc), 4)
        if not polytope_equal(region, reference):
            return _fail("projection oracle disagrees with computed region", 3)
    return 0


def cmd_check(args) -> int:
    try:
        g = _load_matrix(args.gen)
        mu = _load_mu(args, g.ncols)
        tokens = [t for t in args.demand.split(",") if t.strip()]
        demand = [parse_rational(t.strip()) for t in tokens]
        if len(demand) != g.nrows:
            raise ParseError(f"expected {g.nrows} demand rates, got {len(demand)}")
        if any(d < 0 for d in demand):
            raise ParseError("demand rates must be nonnegative")
    except (OSError, ParseError) as exc:
        return _fail(str(exc), 2)
    catalog = build_catalog(g)
    witness = membership(catalog, mu, demand)
    if witness is None:
        print("outside")
        return 1
    print("inside")
    for (i, j), rate in sorted(witness.rates.items()):
        print(f"{i + 1} {j + 1} {format_rational(rate)}")
    return 0


def cmd_bounds(args) -> int:
    try:
        g = _load_matrix(args.gen)
    except (OSError, ParseError) as exc:
        return _fail(str(exc), 2)
    ms = induced_multiset(g)
    for cut in all_hyperplane_cuts(ms):
        coeffs = " ".join(format_rational(c) for c in cut.coefficients)
        print(f"CUT {coeffs} {format_rational(cut.rhs)}")
    # ceil(min axis maximum) is the distance bound; the axis LPs are the
    # same numbers a full region computation would expose.
    catalog = build_catalog(g)
    floor = min(axis_maxima(catalog, [Fraction(1)] * g.ncols))
    print(f"DLOWER {ceil(floor)}")
    return 0


def cmd_known(args) -> int:
    family = _FAMILY_NAMES[args.family]
    try:
        region = known_region(family, args.k)
    except UnsupportedK as exc:
        return _fail(str(exc), 5)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(serialize_polytope(region))
    return 0


def cmd_verify(args) -> int:
    try:
        g = _load_matrix(args.gen)
        with open(args.region, "r", encoding="ascii") as fh:
            claimed = parse_polytope(fh.read())
    except (OSError, ParseError) as exc:
        return _fail(str(exc), 2)
    if claimed.dim != g.nrows:
        return _fail(
            f"region dimension {claimed.dim} does not match k={g.nrows}", 2
        )
    catalog = build_catalog(g)
    computed = compute_region(catalog, [Fraction(1)] * g.ncols)
    if polytope_equal(claimed, computed):
        print("EQUAL")
        return 0
    if polytope_contains(claimed, computed):
        print("CONTAINED")
        return 0
    for facet in claimed.facets:
        for v in computed.vertices:
            if not facet_holds(facet, v):
                coeffs = " ".join(str(c) for c in facet[0])
                point = " ".join(format_rational(x) for x in v)
                print(f"MISMATCH vertex {point} violates facet {coeffs} {facet[1]}")
                return 3
    print("MISMATCH claimed region is a strict subset of the computed region")
    return 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srr",
        description="Exact service rate regions of linear codes over prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mindist", help="geometric minimum distance of a code")
    p.add_argument("--gen", required=True, help="generator matrix file")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("region", help="compute the service rate region")
    p.add_argument("--gen", required=True, help="generator matrix file")
    p.add_argument("--mu", help="file with n server rates (default: all ones)")
    p.add_argument("--uniform", help="uniform server rate (default 1)")
    p.add_argument("--out", required=True, help="output polytope file")
    p.add_argument("--plot", help="write a vertex cycle (k=2) or incidence list (k=3)")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check against the projection oracle (small instances)",
    )
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("check", help="test whether a demand vector is servable")
    p.add_argument("--gen", required=True, help="generator matrix file")
    p.add_argument("--mu", help="file with n server rates (default: all ones)")
    p.add_argument("--uniform", help="uniform server rate (default 1)")
    p.add_argument(
        "--lambda",
        dest="demand",
        required=True,
        help="comma-separated demand rates, e.g. '1,1/2,0'",
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", help="hyperplane cuts and the distance bound")
    p.add_argument("--gen", required=True, help="generator matrix file")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("known", help="write a closed-form region polytope")
    p.add_argument("--family", required=True, choices=sorted(_FAMILY_NAMES))
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--out", required=True, help="output polytope file")
    p.set_defaults(func=cmd_known)

    p = sub.add_parser("verify", help="recompute a region and compare to a file")
    p.add_argument("--gen", required=True, help="generator matrix file")
    p.add_argument("--region", required=True, help="polytope file to verify")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
