"""Exact polytope machinery: convex hulls, facet/vertex conversion, comparisons.

Both directions of the V/H conversion run through one incremental double
description core on pointed cones over the integers, so every facet and
vertex is exact and canonical.  Facets are stored as integer rows
(c, r) meaning c.x <= r with gcd(c, r) = 1; vertices as rational tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .lp import LE, LinearProgram, solve_lp

Vertex = tuple[Fraction, ...]
Facet = tuple[tuple[int, ...], int]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Polytope:
    """A bounded polyhedron carrying both of its exact representations."""

    dim: int
    vertices: tuple[Vertex, ...]
    facets: tuple[Facet, ...]
    outer_bound_only: bool = False
    unit_rates: bool | None = None

    def contains_point(self, point: Sequence[Fraction | int]) -> bool:
        pt = tuple(Fraction(x) for x in point)
        if len(pt) != self.dim:
            raise DimensionMismatch(f"expected a point of dimension {self.dim}")
        return all(facet_holds(f, pt) for f in self.facets)


def normalize_facet(
    coeffs: Sequence[Fraction | int], rhs: Fraction | int
) -> Facet:
    """Scale c.x <= r by a positive rational to coprime integers."""
    fracs = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    g = gcd(*ints) if any(ints) else 1
    if g > 1:
        ints = [v // g for v in ints]
    if not any(ints[:-1]):
        raise ValueError("facet needs a nonzero normal")
    return tuple(ints[:-1]), ints[-1]


def facet_holds(facet: Facet, point: Sequence[Fraction | int]) -> bool:
    coeffs, rhs = facet
    return sum(c * x for c, x in zip(coeffs, point)) <= rhs


def _reduce_ray(vec: list[int]) -> tuple[int, ...]:
    g = gcd(*vec) if any(vec) else 1
    if g > 1:
        vec = [v // g for v in vec]
    return tuple(vec)


def _frac_rref(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form over Q; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    pivot_row = 0
    width = len(work[0]) if work else 0
    for col in range(width):
        sel = next((r for r in range(pivot_row, len(work)) if work[r][col]), None)
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        lead = work[pivot_row][col]
        work[pivot_row] = [v / lead for v in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return work[:pivot_row], pivots


def _frac_rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(_frac_rref(rows)[1])


class DDState:
    """Incremental double description of a pointed cone {y : row.y >= 0}.

    Rays are gcd-reduced integer tuples.  Each ray carries the exact bitmask
    of processed rows it is tight on, which feeds the combinatorial
    adjacency test; masks are recomputed from scratch for every new ray, so
    accidental degeneracies cannot poison the test.
    """

    def __init__(self, d: int, rows: Iterable[tuple[int, ...]]):
        self.d = d
        self.rows: list[tuple[int, ...]] = []
        pending = list(rows)
        basis: list[tuple[int, ...]] = []
        rest: list[tuple[int, ...]] = []
        span: list[list[Fraction]] = []
        for row in pending:
            if len(basis) < d and _frac_rank(span + [[Fraction(v) for v in row]]) > len(span):
                span.append([Fraction(v) for v in row])
                basis.append(row)
            else:
                rest.append(row)
        if len(basis) < d:
            raise ValueError("cone is not pointed: constraint rows have deficient rank")
        self.rays: list[tuple[int, ...]] = [
            _reduce_ray(col) for col in _invert_columns(basis)
        ]
        self.masks: list[int] = [0] * len(self.rays)
        for row in basis:
            bit = 1 << len(self.rows)
            self.rows.append(row)
            for i, ray in enumerate(self.rays):
                if sum(a * b for a, b in zip(row, ray)) == 0:
                    self.masks[i] |= bit
        for row in rest:
            self.add_row(row)

    def _full_mask(self, ray: tuple[int, ...]) -> int:
        mask = 0
        for idx, row in enumerate(self.rows):
            if sum(a * b for a, b in zip(row, ray)) == 0:
                mask |= 1 << idx
        return mask

    def add_row(self, row: tuple[int, ...]) -> None:
        vals = [sum(a * b for a, b in zip(row, ray)) for ray in self.rays]
        bit = 1 << len(self.rows)
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            self.rows.append(row)
            for i, v in enumerate(vals):
                if v == 0:
                    self.masks[i] |= bit
            return
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        masks = self.masks
        d2 = self.d - 2
        fresh: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        for p in pos:
            for m in neg:
                common = masks[p] & masks[m]
                if common.bit_count() < d2:
                    continue
                if any(
                    t != p and t != m and (common & ~mt) == 0
                    for t, mt in enumerate(masks)
                ):
                    continue
                combo = _reduce_ray(
                    [
                        vals[p] * self.rays[m][j] - vals[m] * self.rays[p][j]
                        for j in range(self.d)
                    ]
                )
                if combo not in seen:
                    seen.add(combo)
                    fresh.append(combo)
        keep = pos + zero
        keep.sort()
        self.rows.append(row)
        self.rays = [self.rays[i] for i in keep] + fresh
        kept_masks = [masks[i] | (bit if vals[i] == 0 else 0) for i in keep]
        self.masks = kept_masks + [self._full_mask(ray) for ray in fresh]


def _invert_columns(rows: list[tuple[int, ...]]) -> list[list[int]]:
    """Columns of the inverse of the square matrix `rows`, integer-scaled."""
    d = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(1 if i == j else 0) for j in range(d)]
           for i, row in enumerate(rows)]
    reduced, pivots = _frac_rref(aug)
    if pivots[:d] != list(range(d)):
        raise ValueError("matrix is singular")
    cols = []
    for j in range(d):
        col = [reduced[i][d + j] for i in range(d)]
        scale = lcm(*(f.denominator for f in col))
        cols.append([int(f * scale) for f in col])
    return cols


def _lift_point(point: Vertex) -> tuple[int, ...]:
    scale = lcm(*(x.denominator for x in point), 1)
    return (scale,) + tuple(int(x * scale) for x in point)


def _dd_facets(points: list[Vertex], dim: int) -> list[Facet]:
    """Facets of a full-dimensional hull via the dual cone's extreme rays."""
    state = DDState(dim + 1, [_lift_point(p) for p in points])
    return sorted((tuple(-v for v in ray[1:]), ray[0]) for ray in state.rays)


def hull_to_hrep(
    points: Iterable[Sequence[Fraction | int]], *, unit_rates: bool | None = None
) -> Polytope:
    """Minimal H-representation of conv(points), exact in every dimension.

    Lower-dimensional hulls contribute their affine-hull equations as
    opposing facet pairs; redundant input points are dropped from the
    vertex list.
    """
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        raise ValueError("need at least one point")
    k = len(pts[0])
    if any(len(p) != k for p in pts):
        raise DimensionMismatch("points must share a dimension")
    v0 = pts[0]
    diffs = [[a - b for a, b in zip(p, v0)] for p in pts[1:]]
    rref, pivots = _frac_rref(diffs) if diffs else ([], [])
    r = len(pivots)

    facets: list[Facet] = []
    if r == k:
        facets.extend(_dd_facets(pts, k))
    elif r > 0:
        proj = sorted({tuple(p[j] for j in pivots) for p in pts})
        for coeffs, rhs in _dd_facets(proj, r):
            lifted = [0] * k
            for t, col in enumerate(pivots):
                lifted[col] = coeffs[t]
            facets.append((tuple(lifted), rhs))
    for f in range(k):  # affine-hull equations for the non-pivot coordinates
        if f in pivots:
            continue
        coeffs = [_ZERO] * k
        coeffs[f] = Fraction(1)
        for row_idx, col in enumerate(pivots):
            coeffs[col] = -rref[row_idx][f] if row_idx < len(rref) else _ZERO
        rhs = sum(c * x for c, x in zip(coeffs, v0))
        eq = normalize_facet(coeffs, rhs)
        facets.append(eq)
        facets.append((tuple(-c for c in eq[0]), -eq[1]))

    facets = sorted(set(facets))
    verts = tuple(p for p in pts if _tight_rank(p, facets) == k)
    return Polytope(k, verts, tuple(facets), unit_rates=unit_rates)


def _tight_rank(point: Vertex, facets: Sequence[Facet]) -> int:
    tight = [
        [Fraction(c) for c in coeffs]
        for coeffs, rhs in facets
        if sum(c * x for c, x in zip(coeffs, point)) == rhs
    ]
    return _frac_rank(tight) if tight else 0


def vertices_from_facets(dim: int, facets: Sequence[Facet]) -> tuple[Vertex, ...]:
    """Vertex enumeration for a bounded H-representation (may be redundant)."""
    rows = [(rhs,) + tuple(-c for c in coeffs) for coeffs, rhs in facets]
    rows.append((1,) + (0,) * dim)
    state = DDState(dim + 1, rows)
    verts = []
    for ray in state.rays:
        if ray[0] == 0:
            raise ValueError("H-representation is unbounded")
        if ray[0] < 0:
            continue  # cannot happen for a pointed lift; defensive
        verts.append(tuple(Fraction(v, ray[0]) for v in ray[1:]))
    return tuple(sorted(verts))


def remove_redundant_facets(dim: int, facets: Iterable[Facet]) -> tuple[Facet, ...]:
    """Drop every inequality implied by the others (exact LP test per row)."""
    kept = sorted(set(facets))
    for facet in list(kept):
        others = [g for g in kept if g != facet]
        if not others:
            continue
        lp = LinearProgram(
            maximize=True,
            objective=tuple(Fraction(c) for c in facet[0]),
            rows=tuple(tuple(Fraction(c) for c in g[0]) for g in others),
            relations=(LE,) * len(others),
            rhs=tuple(Fraction(g[1]) for g in others),
            nonneg=(False,) * dim,
        )
        sol = solve_lp(lp)
        if sol.status == "optimal" and sol.value <= facet[1]:
            kept.remove(facet)
    return tuple(kept)


def polytope_from_hrep(
    dim: int,
    facets: Iterable[Facet],
    *,
    prune: bool = True,
    outer_bound_only: bool = False,
    unit_rates: bool | None = None,
) -> Polytope:
    """Canonical Polytope from inequality rows: prune, then enumerate vertices."""
    rows = sorted(set(facets))
    if prune:
        rows = list(remove_redundant_facets(dim, rows))
    verts = vertices_from_facets(dim, rows)
    return Polytope(
        dim,
        verts,
        tuple(sorted(rows)),
        outer_bound_only=outer_bound_only,
        unit_rates=unit_rates,
    )


def polytope_equal(a: Polytope, b: Polytope) -> bool:
    """Identical canonical vertex sets plus mutual facet containment."""
    if a.dim != b.dim:
        raise DimensionMismatch("polytopes live in different dimensions")
    if a.vertices != b.vertices:
        return False
    return all(facet_holds(f, v) for f in b.facets for v in a.vertices) and all(
        facet_holds(f, v) for f in a.facets for v in b.vertices
    )


def polytope_contains(outer: Polytope, inner: Polytope) -> bool:
    """True iff every vertex of `inner` satisfies every facet of `outer`."""
    if outer.dim != inner.dim:
        raise DimensionMismatch("polytopes live in different dimensions")
    return all(facet_holds(f, v) for f in outer.facets for v in inner.vertices)
