"""Projective points, hyperplanes, multisets, and the geometric distance."""

from fractions import Fraction
from itertools import combinations, product

import pytest

from srr import (
    GF2,
    FieldMatrix,
    FieldOrder,
    FieldVector,
    Hyperplane,
    ProjectivePoint,
    RankDeficient,
    ZeroColumn,
    ZeroVector,
    codeword_weight,
    enumerate_hyperplanes,
    enumerate_points,
    enumerate_vectors,
    gaussian_binomial,
    induced_multiset,
    min_distance_geometric,
    restricted_cardinality,
    rm_generator,
    row_reduce,
    simplex_generator,
)

GF3 = FieldOrder(3)


def _count_subspaces(v, k, q):
    """Oracle: count distinct k-subspaces by canonical row-echelon bases."""
    order = FieldOrder(q)
    if k == 0:
        return 1
    vecs = [t for t in product(range(q), repeat=v) if any(t)]
    spans = set()
    for combo in combinations(vecs, k):
        rref, rank, _ = row_reduce(FieldMatrix(combo, order))
        if rank == k:
            spans.add(rref.rows)
    return len(spans)


def test_point_normalization_is_canonical():
    p1 = ProjectivePoint.from_vector(FieldVector((2, 1), GF3))
    p2 = ProjectivePoint.from_vector(FieldVector((1, 2), GF3))
    # (2,1) = 2*(1,2) over GF(3): same 1-subspace, same representative
    assert p1 == p2
    assert p1.representative.entries[0] == 1
    with pytest.raises(ZeroVector):
        ProjectivePoint.from_vector(FieldVector((0, 0), GF3))


def test_gaussian_binomial_values():
    assert gaussian_binomial(3, 1, 2) == 7 == _count_subspaces(3, 1, 2)
    assert gaussian_binomial(5, 0, 2) == 1
    assert gaussian_binomial(4, 2, 2) == 35 == _count_subspaces(4, 2, 2)
    assert gaussian_binomial(3, 1, 3) == 13 == _count_subspaces(3, 1, 3)
    assert gaussian_binomial(2, 3, 2) == 0
    assert gaussian_binomial(4, -1, 2) == 0


@pytest.mark.parametrize("v,q", [(3, 2), (4, 2), (3, 3)])
def test_gaussian_symmetry(v, q):
    for k in range(v + 1):
        assert gaussian_binomial(v, k, q) == gaussian_binomial(v, v - k, q)


@pytest.mark.parametrize(
    "k,q,expected", [(2, 2, 3), (4, 2, 15), (2, 3, 4), (3, 3, 13)]
)
def test_enumerate_hyperplanes_count(k, q, expected):
    order = FieldOrder(q)
    planes = list(enumerate_hyperplanes(k, order))
    assert len(planes) == expected
    assert len(set(planes)) == expected
    assert expected == (q**k - 1) // (q - 1)
    points = list(enumerate_points(k, order))
    assert len(points) == gaussian_binomial(k, 1, q)
    assert len(planes) == gaussian_binomial(k, k - 1, q)


def test_induced_multiset_simplex2():
    ms = induced_multiset(simplex_generator(2))
    assert ms.cardinality == 3
    assert all(c == 1 for c in ms.chi.values())
    assert all(m == 1 for m in ms.mu.values())


def test_induced_multiset_duplicate_column():
    g = FieldMatrix(((1, 1, 0), (0, 0, 1)), GF2)
    ms = induced_multiset(g)
    p = ProjectivePoint.from_vector(FieldVector((1, 0), GF2))
    assert ms.chi[p] == 2
    assert ms.mu[p] == 2


def test_induced_multiset_rm13():
    ms = induced_multiset(rm_generator(4, "nonsystematic"))
    assert len(ms.chi) == 8
    assert all(c == 1 for c in ms.chi.values())


def test_induced_multiset_aggregates_rates():
    g = FieldMatrix(((1, 1, 0), (0, 0, 1)), GF2)
    ms = induced_multiset(g, [Fraction(1, 2), Fraction(1, 3), Fraction(2)])
    p = ProjectivePoint.from_vector(FieldVector((1, 0), GF2))
    assert ms.mu[p] == Fraction(5, 6)


def test_induced_multiset_rejects_bad_matrices():
    with pytest.raises(ZeroColumn):
        induced_multiset(FieldMatrix(((1, 0), (0, 0)), GF2))
    with pytest.raises(RankDeficient):
        induced_multiset(FieldMatrix(((1, 1), (1, 1)), GF2))


def test_restricted_cardinality_simplex3_uniform():
    ms = induced_multiset(simplex_generator(3))
    sizes = {
        restricted_cardinality(ms, h) for h in enumerate_hyperplanes(3, GF2)
    }
    assert sizes == {3}


def test_restricted_cardinality_single_point():
    g = FieldMatrix(((1, 1), (0, 0), (0, 0)), GF2)
    # rank deficient for induced_multiset; build the multiset by hand
    from srr import PointMultiset

    p = ProjectivePoint.from_vector(FieldVector((1, 0, 0), GF2))
    ms = PointMultiset(ambient_k=3, order=GF2, chi={p: 2}, mu={p: Fraction(2)})
    through = Hyperplane.from_normal(FieldVector((0, 1, 0), GF2))
    missing = Hyperplane.from_normal(FieldVector((1, 0, 0), GF2))
    assert restricted_cardinality(ms, through) == 2
    assert restricted_cardinality(ms, missing) == 0


def test_restricted_cardinality_rm13_even_sum_plane():
    ms = induced_multiset(rm_generator(4, "nonsystematic"))
    h = Hyperplane.from_normal(FieldVector((1, 1, 1, 1), GF2))
    # columns with an even coordinate sum among the eight
    g = rm_generator(4, "nonsystematic")
    expected = sum(
        1 for j in range(8) if sum(g.column(j).entries) % 2 == 0
    )
    assert restricted_cardinality(ms, h) == expected == 4


def _brute_min_distance(g):
    """Oracle: minimum weight over all q^k - 1 nonzero messages."""
    best = None
    for a in enumerate_vectors(g.nrows, g.order, nonzero_only=True):
        codeword = [a.dot(g.column(j)) for j in range(g.ncols)]
        w = sum(1 for e in codeword if e != 0)
        best = w if best is None else min(best, w)
    return best


GF3_TETRA = FieldMatrix(((1, 0, 1, 1), (0, 1, 1, 2)), GF3)
GF5_PAIR = FieldMatrix(((1, 0, 1, 2, 3), (0, 1, 1, 1, 1)), FieldOrder(5))


@pytest.mark.parametrize(
    "g,expected",
    [
        (simplex_generator(3), 4),
        (rm_generator(4, "nonsystematic"), 4),
        (FieldMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1)), GF2), 1),
    ],
)
def test_min_distance_known_values(g, expected):
    assert min_distance_geometric(g) == expected


@pytest.mark.parametrize(
    "g",
    [
        simplex_generator(2),
        simplex_generator(3),
        simplex_generator(4),
        rm_generator(3, "nonsystematic"),
        rm_generator(4, "nonsystematic"),
        rm_generator(4, "systematic"),
        GF3_TETRA,
        GF5_PAIR,
    ],
)
def test_min_distance_matches_brute_force(g):
    assert g.order.q ** g.nrows <= 4096
    assert min_distance_geometric(g) == _brute_min_distance(g)


def test_codeword_weight_examples():
    s3 = simplex_generator(3)
    for a in enumerate_vectors(3, GF2, nonzero_only=True):
        assert codeword_weight(s3, a) == 4
    ident = FieldMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1)), GF2)
    assert codeword_weight(ident, FieldVector((1, 0, 0), GF2)) == 1
    rm = rm_generator(4, "nonsystematic")
    assert codeword_weight(rm, FieldVector((0, 0, 0, 1), GF2)) == 8
    with pytest.raises(ZeroVector):
        codeword_weight(ident, FieldVector((0, 0, 0), GF2))


@pytest.mark.parametrize("g", [simplex_generator(3), GF3_TETRA])
def test_codeword_weight_equals_off_hyperplane_count(g):
    ms = induced_multiset(g)
    for a in enumerate_vectors(g.nrows, g.order, nonzero_only=True):
        h = Hyperplane.from_normal(a)
        assert codeword_weight(g, a) == g.ncols - restricted_cardinality(ms, h)
