"""Points, hyperplanes, and point multisets of the projective geometry PG(k-1, q).

A generator matrix with no zero column induces a multiset of projective
points (one per column, counted with multiplicity); hyperplane incidence
counts drive the geometric minimum-distance computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DimensionMismatch, RankDeficient, ZeroColumn, ZeroVector
from .fields import FieldMatrix, FieldOrder, FieldVector, enumerate_vectors, row_reduce


@dataclass(frozen=True)
class ProjectivePoint:
    """A 1-subspace, stored as the representative whose first nonzero entry is 1."""

    representative: FieldVector

    @classmethod
    def from_vector(cls, v: FieldVector) -> "ProjectivePoint":
        if v.is_zero():
            raise ZeroVector("the zero vector spans no projective point")
        lead = next(e for e in v.entries if e != 0)
        return cls(v.scale(v.order.inv(lead)))

    @property
    def dimension(self) -> int:
        return len(self.representative)

    @property
    def order(self) -> FieldOrder:
        return self.representative.order

    def __lt__(self, other: "ProjectivePoint") -> bool:
        return self.representative.entries < other.representative.entries


@dataclass(frozen=True)
class Hyperplane:
    """A (k-1)-subspace {x : normal . x = 0}, normal normalized like a point."""

    normal: FieldVector

    @classmethod
    def from_normal(cls, v: FieldVector) -> "Hyperplane":
        return cls(ProjectivePoint.from_vector(v).representative)

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def contains(self, p: ProjectivePoint) -> bool:
        return self.normal.dot(p.representative) == 0


@dataclass
class PointMultiset:
    """Columns of a code collapsed to projective points.

    `chi` maps each point to its column multiplicity; `mu` aggregates the
    service rates of the servers whose columns land on the point.
    """

    ambient_k: int
    order: FieldOrder
    chi: dict[ProjectivePoint, int] = field(default_factory=dict)
    mu: dict[ProjectivePoint, Fraction] = field(default_factory=dict)

    @property
    def cardinality(self) -> int:
        return sum(self.chi.values())

    def points(self) -> list[ProjectivePoint]:
        return sorted(self.chi)


def induced_multiset(
    g: FieldMatrix, mu_servers: Sequence[Fraction | int] | None = None
) -> PointMultiset:
    """Collapse the columns of a full-length rank-k matrix to a point multiset.

    `mu_servers` defaults to unit rates, in which case mu(p) = chi(p).
    """
    n = g.ncols
    if mu_servers is None:
        rates = [Fraction(1)] * n
    else:
        rates = [Fraction(m) for m in mu_servers]
        if len(rates) != n:
            raise DimensionMismatch(f"expected {n} server rates, got {len(rates)}")
        if any(r < 0 for r in rates):
            raise ValueError("server rates must be nonnegative")
    ms = PointMultiset(ambient_k=g.nrows, order=g.order)
    for j in range(n):
        col = g.column(j)
        if col.is_zero():
            raise ZeroColumn(f"column {j + 1} is zero")
        p = ProjectivePoint.from_vector(col)
        ms.chi[p] = ms.chi.get(p, 0) + 1
        ms.mu[p] = ms.mu.get(p, Fraction(0)) + rates[j]
    if row_reduce(g)[1] < g.nrows:
        raise RankDeficient(f"matrix rank below {g.nrows}")
    return ms


def gaussian_binomial(v: int, k: int, q: int | FieldOrder) -> int:
    """Number of k-subspaces of a v-dimensional space over GF(q)."""
    if v < 0:
        raise ValueError("v must be nonnegative")
    if k < 0 or k > v:
        return 0
    base = q.q if isinstance(q, FieldOrder) else q
    num = den = 1
    for i in range(k):
        num *= base ** (v - i) - 1
        den *= base ** (i + 1) - 1
    return num // den


def enumerate_points(k: int, order: FieldOrder) -> Iterator[ProjectivePoint]:
    """The (q^k - 1)/(q - 1) points of PG(k-1, q), in lexicographic order."""
    if k < 1:
        raise ValueError("ambient dimension must be positive")
    for v in enumerate_vectors(k, order, nonzero_only=True):
        lead = next(e for e in v.entries if e != 0)
        if lead == 1:  # canonical representatives only
            yield ProjectivePoint(v)


def enumerate_hyperplanes(k: int, order: FieldOrder) -> Iterator[Hyperplane]:
    """All hyperplanes of PG(k-1, q); by duality one per projective point."""
    for p in enumerate_points(k, order):
        yield Hyperplane(p.representative)


def restricted_cardinality(ms: PointMultiset, h: Hyperplane) -> int:
    """#(G intersect H): total multiplicity of the multiset points on `h`."""
    if h.dimension != ms.ambient_k or h.normal.order != ms.order:
        raise DimensionMismatch("hyperplane and multiset live in different spaces")
    return sum(c for p, c in ms.chi.items() if h.contains(p))


def codeword_weight(g: FieldMatrix, a: FieldVector) -> int:
    """Hamming weight of the codeword a*G: n minus the columns orthogonal to a."""
    if a.is_zero():
        raise ZeroVector("message vector must be nonzero")
    if len(a) != g.nrows or a.order != g.order:
        raise DimensionMismatch("message vector must have length k over GF(q)")
    on = sum(1 for j in range(g.ncols) if a.dot(g.column(j)) == 0)
    return g.ncols - on


def min_distance_geometric(g: FieldMatrix) -> int:
    """Minimum distance as n minus the best hyperplane section of the multiset."""
    ms = induced_multiset(g)
    best = max(
        restricted_cardinality(ms, h) for h in enumerate_hyperplanes(g.nrows, g.order)
    )
    return g.ncols - best
