"""Binary simplex and first-order Reed-Muller codes with their known regions.

Generator matrices use lexicographic column order throughout so that
serialized output is bit-reproducible.  The closed-form region polytopes
carry explicit vertex and facet data; for the systematic variant at k >= 5
only an outer bound is available and the polytope is tagged accordingly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import NotATheoremVertex, UnsupportedK
from .fields import GF2, FieldMatrix, enumerate_vectors
from .polytope import Polytope, polytope_from_hrep
from .recovery import RecoveryCatalog, build_catalog
from .region import Allocation, allocation_is_valid

BINARY_SIMPLEX = "binary_simplex"
RM_NONSYSTEMATIC = "rm_nonsystematic"
RM_SYSTEMATIC = "rm_systematic"
FAMILIES = (BINARY_SIMPLEX, RM_NONSYSTEMATIC, RM_SYSTEMATIC)

_ZERO = Fraction(0)


def simplex_generator(k: int) -> FieldMatrix:
    """k x (2^k - 1) binary matrix whose columns are all nonzero vectors."""
    if k < 1:
        raise UnsupportedK("simplex code needs k >= 1")
    cols = [v.entries for v in enumerate_vectors(k, GF2, nonzero_only=True)]
    return FieldMatrix(tuple(tuple(c[i] for c in cols) for i in range(k)), GF2)


def rm_generator(k: int, variant: str = "nonsystematic") -> FieldMatrix:
    """k x 2^(k-1) first-order Reed-Muller generator matrix.

    Columns evaluate over the lexicographically ordered points of GF(2)^(k-1);
    the top k-1 rows indicate the coordinate hyperplanes, and the last row is
    either the all-ones row (nonsystematic) or the sum of all rows
    (systematic, which makes every unit vector a column).
    """
    if k < 2:
        raise UnsupportedK("Reed-Muller construction needs k >= 2")
    pts = list(product((0, 1), repeat=k - 1))
    rows = [
        tuple(1 if u[k - 1 - j] == 0 else 0 for u in pts)
        for j in range(k - 1, 0, -1)
    ]
    ones = (1,) * len(pts)
    if variant == "nonsystematic":
        rows.append(ones)
    elif variant == "systematic":
        acc = list(ones)
        for r in rows:
            acc = [a ^ b for a, b in zip(acc, r)]
        rows.append(tuple(acc))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return FieldMatrix(tuple(rows), GF2)


def family_generator(family: str, k: int) -> FieldMatrix:
    if family == BINARY_SIMPLEX:
        return simplex_generator(k)
    if family == RM_NONSYSTEMATIC:
        return rm_generator(k, "nonsystematic")
    if family == RM_SYSTEMATIC:
        return rm_generator(k, "systematic")
    raise ValueError(f"unknown family {family!r}")


def _axis(k: int, i: int, value: Fraction | int) -> tuple[Fraction, ...]:
    return tuple(Fraction(value) if j == i else _ZERO for j in range(k))


def _nonneg_facets(k: int) -> list[tuple[tuple[int, ...], int]]:
    return [
        (tuple(-1 if j == i else 0 for j in range(k)), 0) for i in range(k)
    ]


def _closed_form(k, facets, vertices) -> Polytope:
    verts = tuple(sorted(tuple(Fraction(x) for x in v) for v in vertices))
    return Polytope(k, verts, tuple(sorted(facets)), unit_rates=True)


def known_region(family: str, k: int) -> Polytope:
    """The published region polytope (outer bound only for systematic k >= 5)."""
    if family == BINARY_SIMPLEX:
        if k < 1:
            raise UnsupportedK("simplex region needs k >= 1")
        top = 2 ** (k - 1)
        facets = _nonneg_facets(k) + [((1,) * k, top)]
        verts = [(_ZERO,) * k] + [_axis(k, i, top) for i in range(k)]
        return _closed_form(k, facets, verts)

    if family == RM_NONSYSTEMATIC:
        if k < 2:
            raise UnsupportedK("Reed-Muller region needs k >= 2")
        top = 2 ** (k - 2)
        facets = _nonneg_facets(k) + [((1,) * k, top)]
        verts = [(_ZERO,) * k]
        if k <= 3:
            verts += [_axis(k, i, top) for i in range(k)]
        else:
            facets.append(((2,) * (k - 1) + (3,), 2 ** (k - 1) + 2))
            verts += [_axis(k, i, top) for i in range(k - 1)]
            verts.append(_axis(k, k - 1, Fraction(2 ** (k - 1) + 2, 3)))
            for j in range(k - 1):
                w = [_ZERO] * k
                w[j] = Fraction(top - 2)
                w[k - 1] = Fraction(2)
                verts.append(tuple(w))
        return _closed_form(k, facets, verts)

    if family == RM_SYSTEMATIC:
        if k == 2:
            facets = _nonneg_facets(2) + [((1, 0), 1), ((0, 1), 1)]
            verts = [(0, 0), (1, 0), (0, 1), (1, 1)]
            return _closed_form(2, facets, verts)
        if k == 3:
            facets = _nonneg_facets(3) + [
                ((0, 1, 1), 2),
                ((1, 0, 1), 2),
                ((1, 1, 0), 2),
            ]
            verts = [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 1)]
            return _closed_form(3, facets, verts)
        if k == 4:
            # The published vertex list (axis points 10/3*e_i, 3*e_i + e_j,
            # and all-4/3) misses the four points like (2/3, 2/3, 2/3, 8/3)
            # where three drop-one facets meet one weighted facet; the
            # half-space form is the achievable region, so the vertex list
            # is enumerated from it exactly.
            facets = _nonneg_facets(4)
            for i in range(4):
                omit = tuple(0 if j == i else 1 for j in range(4))
                boost = tuple(3 if j == i else 1 for j in range(4))
                facets.append((omit, 4))
                facets.append((boost, 10))
            return polytope_from_hrep(4, facets, prune=False, unit_rates=True)
        if 5 <= k <= 10:
            rows = _nonneg_facets(k)
            for picks in product((False, True), repeat=k):
                coeffs = tuple(3 if inside else 1 for inside in picks)
                rows.append((coeffs, 2 ** (k - 1) + 2 * sum(picks)))
            return polytope_from_hrep(
                k, rows, prune=True, outer_bound_only=True, unit_rates=True
            )
        raise UnsupportedK(
            "systematic Reed-Muller region is known for 2 <= k <= 4; "
            "outer bound available up to k = 10"
        )

    raise ValueError(f"unknown family {family!r}")


def _catalog_indices(catalog: RecoveryCatalog):
    lookup: dict[tuple[int, tuple[int, ...]], int] = {}
    for i, sets in enumerate(catalog.sets):
        for j, rset in enumerate(sets):
            lookup[(i, rset.columns)] = j
    return lookup


class _Schedule:
    """Assembles an allocation over a concrete catalog by column vectors."""

    def __init__(self, g: FieldMatrix, catalog: RecoveryCatalog):
        self.g = g
        self.catalog = catalog
        self.col_of = {g.column(j).entries: j for j in range(g.ncols)}
        self.set_index = _catalog_indices(catalog)
        self.alloc = Allocation()

    def add(self, file_index: int, vectors, rate: Fraction) -> None:
        cols = tuple(sorted(self.col_of[tuple(v)] for v in vectors))
        j = self.set_index[(file_index, cols)]
        self.alloc.rates[(file_index, j)] = (
            self.alloc.rates.get((file_index, j), _ZERO) + rate
        )

    def add_by_columns(self, file_index: int, cols: tuple[int, ...], rate: Fraction) -> None:
        j = self.set_index[(file_index, cols)]
        self.alloc.rates[(file_index, j)] = (
            self.alloc.rates.get((file_index, j), _ZERO) + rate
        )


def _unit(k: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(k))


def _vec_add(a, b):
    return tuple(x ^ y for x, y in zip(a, b))


def _axis_fill(schedule: _Schedule, k: int, i: int) -> None:
    """Systematic set plus every size-3 set of file i at the saturating rate."""
    schedule.add(i, [_unit(k, i)], Fraction(1))
    triples = [
        rset.columns
        for rset in schedule.catalog.sets[i]
        if len(rset.columns) == 3
    ]
    if triples:
        rate = Fraction(1, 2 ** (k - 2) - 1)
        for cols in triples:
            schedule.add_by_columns(i, cols, rate)


def _pair_partition(schedule: _Schedule, k: int, i: int, exclude=()) -> None:
    """Disjoint pairs {x, x + e_i} covering the columns outside `exclude`."""
    banned = set(exclude)
    e_i = _unit(k, i)
    for vec in schedule.col_of:
        if vec in banned or vec[i] != 0:
            continue
        partner = _vec_add(vec, e_i)
        schedule.add(i, [vec, partner], Fraction(1))


def achievability_schedule(
    family: str, k: int, target
) -> Allocation:
    """Explicit allocation realizing a closed-form region vertex.

    Raises NotATheoremVertex for any demand that is not one of the stated
    vertices of the family's region.
    """
    g = family_generator(family, k)
    catalog = build_catalog(g)
    goal = tuple(Fraction(x) for x in target)
    if len(goal) != k:
        raise NotATheoremVertex(f"target must have length {k}")
    schedule = _Schedule(g, catalog)
    zero = (_ZERO,) * k

    def finish() -> Allocation:
        assert allocation_is_valid(catalog, [1] * catalog.n, goal, schedule.alloc)
        return schedule.alloc

    if goal == zero:
        return finish()

    support = [i for i, v in enumerate(goal) if v]

    if family == BINARY_SIMPLEX:
        top = 2 ** (k - 1)
        if len(support) == 1 and goal[support[0]] == top:
            i = support[0]
            schedule.add(i, [_unit(k, i)], Fraction(1))
            _pair_partition(schedule, k, i)
            return finish()
        raise NotATheoremVertex(f"{goal} is not a simplex region vertex")

    if family == RM_NONSYSTEMATIC:
        last = k - 1
        if len(support) == 1:
            i = support[0]
            if i < last and goal[i] == 2 ** (k - 2):
                _pair_partition(schedule, k, i)
                return finish()
            axis_top = (
                Fraction(2 ** (k - 2))
                if k <= 3
                else Fraction(2 ** (k - 1) + 2, 3)
            )
            if i == last and goal[i] == axis_top:
                _axis_fill(schedule, k, last)
                return finish()
        if (
            k >= 4
            and len(support) == 2
            and support[1] == last
            and goal[last] == 2
            and goal[support[0]] == 2 ** (k - 2) - 2
        ):
            i = support[0]
            partner = next(j for j in range(k - 1) if j != i)
            e_k = _unit(k, last)
            special = [
                e_k,
                _vec_add(e_k, _unit(k, i)),
                _vec_add(e_k, _unit(k, partner)),
                _vec_add(_vec_add(e_k, _unit(k, i)), _unit(k, partner)),
            ]
            _pair_partition(schedule, k, i, exclude=special)
            schedule.add(last, [e_k], Fraction(1))
            schedule.add(last, special[1:], Fraction(1))
            return finish()
        raise NotATheoremVertex(f"{goal} is not a stated Reed-Muller vertex")

    if family == RM_SYSTEMATIC:
        if k == 2:
            if all(v in (0, 1) for v in goal):
                for i in support:
                    schedule.add(i, [_unit(k, i)], Fraction(1))
                return finish()
        if len(support) == 1 and k >= 3:
            i = support[0]
            if goal[i] == Fraction(2 ** (k - 1) + 2, 3):
                _axis_fill(schedule, k, i)
                return finish()
        if k == 3 and goal == (Fraction(1),) * 3:
            for i in range(3):
                schedule.add(i, [_unit(k, i)], Fraction(1))
            return finish()
        if k >= 4 and len(support) == 2:
            a, b = support
            big = Fraction(2 ** (k - 1) + 1, 3)
            if goal[a] == big and goal[b] == 1:
                hi, lo = a, b
            elif goal[b] == big and goal[a] == 1:
                hi, lo = b, a
            else:
                hi = None
            if hi is not None:
                schedule.add(hi, [_unit(k, hi)], Fraction(1))
                schedule.add(lo, [_unit(k, lo)], Fraction(1))
                e_lo = _unit(k, lo)
                rate = Fraction(1, 2 ** (k - 2) - 2)
                for rset in catalog.sets[hi]:
                    if len(rset.columns) == 3 and schedule.col_of[e_lo] not in rset.columns:
                        schedule.add_by_columns(hi, rset.columns, rate)
                return finish()
        if k == 4 and goal == (Fraction(4, 3),) * 4:
            heavy = [
                vec for vec in schedule.col_of if sum(vec) == 3
            ]
            for i in range(4):
                schedule.add(i, [_unit(k, i)], Fraction(1))
                triple = [vec for vec in heavy if vec[i] == 1]
                schedule.add(i, triple, Fraction(1, 3))
            return finish()
        raise NotATheoremVertex(f"{goal} is not a stated Reed-Muller vertex")

    raise ValueError(f"unknown family {family!r}")
