"""Geometric upper bounds on service rates and the distance lower bound.

Counting multiset capacity off a hyperplane bounds every demand whose unit
vectors avoid the hyperplane; scanning all hyperplanes yields a family of
valid inequalities and, under unit rates, a certified lower bound on the
minimum distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .errors import DimensionMismatch, EmptyIndexSet, NonUnitRates
from .geometry import Hyperplane, PointMultiset, enumerate_hyperplanes
from .polytope import Polytope

_ZERO = Fraction(0)


@dataclass(frozen=True)
class ValidInequality:
    """A half-space coeffs . demand <= rhs containing the service region."""

    coefficients: tuple[Fraction, ...]
    rhs: Fraction

    def satisfied_by(self, point: Sequence[Fraction | int]) -> bool:
        return (
            sum(c * Fraction(x) for c, x in zip(self.coefficients, point))
            <= self.rhs
        )


def hyperplane_capacity(ms: PointMultiset, h: Hyperplane) -> Fraction:
    """Total service rate of the multiset points off the hyperplane."""
    if h.dimension != ms.ambient_k or h.normal.order != ms.order:
        raise DimensionMismatch("hyperplane and multiset live in different spaces")
    return sum(
        (rate for p, rate in ms.mu.items() if not h.contains(p)), _ZERO
    )


def hyperplane_cut(ms: PointMultiset, h: Hyperplane) -> ValidInequality:
    """Bound the demands whose unit vectors avoid `h` by its off-capacity.

    The constrained coordinates are exactly those where the normal is
    nonzero (e_i lies on the hyperplane iff coordinate i of the normal
    vanishes).
    """
    if h.dimension != ms.ambient_k or h.normal.order != ms.order:
        raise DimensionMismatch("hyperplane and multiset live in different spaces")
    picked = tuple(
        Fraction(1) if h.normal[i] != 0 else _ZERO for i in range(ms.ambient_k)
    )
    if not any(picked):
        raise EmptyIndexSet("hyperplane contains every unit vector")
    return ValidInequality(picked, hyperplane_capacity(ms, h))


def all_hyperplane_cuts(ms: PointMultiset) -> tuple[ValidInequality, ...]:
    """One cut per hyperplane of the ambient geometry, deduplicated."""
    cuts = {
        hyperplane_cut(ms, h)
        for h in enumerate_hyperplanes(ms.ambient_k, ms.order)
    }
    return tuple(sorted(cuts, key=lambda c: (c.coefficients, c.rhs)))


def axis_limits(region: Polytope) -> tuple[Fraction, ...]:
    """Largest multiple of each unit vector inside the region.

    Read directly off the H-representation: along axis i only facets with a
    positive i-th coefficient bind, each capping the axis at rhs/coeff.
    """
    out = []
    for i in range(region.dim):
        best: Fraction | None = None
        for coeffs, rhs in region.facets:
            if coeffs[i] > 0:
                cap = Fraction(rhs, coeffs[i])
                if best is None or cap < best:
                    best = cap
        if best is None:
            raise ValueError("region is unbounded along an axis")
        out.append(best)
    return tuple(out)


def uniform_axis_rate(region: Polytope) -> Fraction:
    """The largest s with s*e_i inside the region for every i."""
    return min(axis_limits(region))


def min_distance_lower_bound(region: Polytope) -> int:
    """ceil of the uniform axis rate; valid only under unit server rates."""
    if region.unit_rates is False:
        raise NonUnitRates("distance bound requires a unit-rate region")
    s = uniform_axis_rate(region)
    return ceil(s)
