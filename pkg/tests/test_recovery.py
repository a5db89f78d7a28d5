"""Recovery-set enumeration against an exhaustive subset oracle."""

from itertools import combinations, product

import pytest

from srr import (
    GF2,
    FieldMatrix,
    FieldOrder,
    RankDeficient,
    RecoverySet,
    ZeroColumn,
    build_catalog,
    enumerate_recovery_sets,
    rm_generator,
    simplex_generator,
    validate_recovery_set,
)

GF3 = FieldOrder(3)


def _brute_recovery_sets(g, i):
    """Oracle: test every nonempty column subset with every coefficient map.

    Independence is checked by enumerating all nontrivial combinations, so
    this path shares no linear algebra with the implementation.
    """
    q, n, k = g.order.q, g.ncols, g.nrows
    cols = [g.column(j).entries for j in range(n)]
    target = tuple(1 if t == i else 0 for t in range(k))
    found = []
    for size in range(1, n + 1):
        if size > k:
            break  # more than k vectors cannot be independent
        for subset in combinations(range(n), size):
            chosen = [cols[j] for j in subset]

            def comb(alpha):
                return tuple(
                    sum(a * v[t] for a, v in zip(alpha, chosen)) % q
                    for t in range(k)
                )

            dependent = any(
                not any(comb(alpha))
                for alpha in product(range(q), repeat=size)
                if any(alpha)
            )
            if dependent:
                continue
            hits = [
                alpha
                for alpha in product(range(1, q), repeat=size)
                if comb(alpha) == target
            ]
            if hits:
                assert len(hits) == 1
                found.append((subset, hits[0]))
    return found


SMALL_CODES = [
    FieldMatrix(((1, 0), (0, 1)), GF2),
    FieldMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1)), GF2),
    simplex_generator(2),
    simplex_generator(3),
    rm_generator(3, "nonsystematic"),
    rm_generator(3, "systematic"),
    rm_generator(4, "nonsystematic"),
    rm_generator(4, "systematic"),
    FieldMatrix(((1, 0, 1, 1), (0, 1, 1, 2)), GF3),
    FieldMatrix(((1, 0, 1, 2, 0, 1), (0, 1, 1, 1, 2, 2)), GF3),
]


@pytest.mark.parametrize("g", SMALL_CODES)
def test_enumeration_complete_against_brute_force(g):
    assert g.ncols <= 12
    for i in range(g.nrows):
        enumerated = [
            (r.columns, r.coefficients) for r in enumerate_recovery_sets(g, i)
        ]
        assert sorted(enumerated) == sorted(_brute_recovery_sets(g, i))


def test_simplex2_sets():
    g = simplex_generator(2)  # columns (0,1), (1,0), (1,1)
    by_file = [
        [(r.columns, r.coefficients) for r in enumerate_recovery_sets(g, i)]
        for i in range(2)
    ]
    assert by_file[0] == [((1,), (1,)), ((0, 2), (1, 1))]
    assert by_file[1] == [((0,), (1,)), ((1, 2), (1, 1))]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_simplex_disjoint_family(k):
    """Each file owns 2^(k-1) pairwise disjoint recovery sets."""
    g = simplex_generator(k)
    for i in range(k):
        sets = enumerate_recovery_sets(g, i)
        small = [frozenset(r.columns) for r in sets if len(r.columns) <= 2]
        chosen = []
        for s in sorted(small, key=sorted):
            if all(not (s & t) for t in chosen):
                chosen.append(s)
        assert len(chosen) == 2 ** (k - 1)
        covered = set().union(*chosen)
        assert len(covered) == 2**k - 1


@pytest.mark.parametrize("k", [3, 4])
def test_systematic_rm_set_profile(k):
    g = rm_generator(k, "systematic")
    expected_triples = (2 ** (k - 1) - 1) * (2 ** (k - 1) - 2) // 6
    for i in range(k):
        sets = enumerate_recovery_sets(g, i)
        sizes = {}
        for r in sets:
            sizes[len(r.columns)] = sizes.get(len(r.columns), 0) + 1
        assert sizes[1] == 1
        assert sizes[3] == expected_triples


def test_nonsystematic_rm4_last_file_profile():
    g = rm_generator(4, "nonsystematic")
    sets = enumerate_recovery_sets(g, 3)
    sizes = sorted(len(r.columns) for r in sets)
    assert sizes == [1, 3, 3, 3, 3, 3, 3, 3]


def test_build_catalog_counts():
    ident = FieldMatrix(((1, 0), (0, 1)), GF2)
    assert build_catalog(ident).counts == (1, 1)
    assert build_catalog(simplex_generator(2)).counts == (2, 2)


def test_catalog_ordering_and_uniqueness():
    cat = build_catalog(rm_generator(4, "systematic"))
    for sets in cat.sets:
        keys = [(len(r.columns), r.columns) for r in sets]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


def test_build_catalog_rejects_bad_matrices():
    with pytest.raises(ZeroColumn):
        build_catalog(FieldMatrix(((1, 0), (0, 0)), GF2))
    with pytest.raises(RankDeficient):
        build_catalog(FieldMatrix(((1, 1), (1, 1)), GF2))


def test_validate_recovery_set():
    g = simplex_generator(2)
    assert validate_recovery_set(g, RecoverySet(0, (0, 2), (1, 1)))
    # zero coefficient breaks reducedness
    assert not validate_recovery_set(g, RecoverySet(0, (0, 1), (1, 0)))
    assert not validate_recovery_set(g, RecoverySet(0, (), ()))
    # dependent columns
    dup = FieldMatrix(((1, 1), (1, 1), (0, 1)), GF2)
    assert not validate_recovery_set(dup, RecoverySet(0, (0, 1), (1, 1)))
    # wrong sum
    assert not validate_recovery_set(g, RecoverySet(1, (0, 2), (1, 1)))
    # out-of-range column index
    assert not validate_recovery_set(g, RecoverySet(0, (0, 9), (1, 1)))


@pytest.mark.parametrize("g", SMALL_CODES[:6])
def test_coefficients_unique_on_independent_columns(g):
    for i in range(g.nrows):
        for r in enumerate_recovery_sets(g, i):
            matches = _brute_recovery_sets(g, i)
            hits = [alpha for cols, alpha in matches if cols == r.columns]
            assert hits == [r.coefficients]
