"""GF(q) arithmetic, row reduction, solving, and vector enumeration."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srr import (
    GF2,
    DimensionMismatch,
    FieldMatrix,
    FieldOrder,
    FieldVector,
    enumerate_vectors,
    field_arith,
    rm_generator,
    row_reduce,
    solve_linear,
    unit_vector,
    vector_rank,
)


def test_field_order_requires_prime():
    for q in (0, 1, 4, 6, 9, 12):
        with pytest.raises(ValueError):
            FieldOrder(q)
    for q in (2, 3, 5, 7, 11, 13):
        assert FieldOrder(q).q == q


def test_arith_known_values():
    assert FieldOrder(2).add(1, 1) == 0
    assert FieldOrder(3).inv(2) == 2
    assert FieldOrder(5).mul(3, 4) == 2


def test_division_by_zero():
    q5 = FieldOrder(5)
    with pytest.raises(ZeroDivisionError):
        q5.inv(0)
    with pytest.raises(ZeroDivisionError):
        q5.div(1, 0)


def test_field_arith_dispatch():
    q7 = FieldOrder(7)
    assert field_arith(q7, 3, 5, "add") == 1
    assert field_arith(q7, 3, 5, "sub") == 5
    assert field_arith(q7, 3, 5, "mul") == 1
    assert field_arith(q7, 3, 5, "div") == 2
    assert field_arith(q7, 3, None, "neg") == 4
    assert field_arith(q7, 3, None, "inv") == 5
    with pytest.raises(ValueError):
        field_arith(q7, 1, 2, "pow")


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11])
def test_every_nonzero_element_has_inverse(q):
    order = FieldOrder(q)
    for a in range(1, q):
        assert order.mul(a, order.inv(a)) == 1


def test_row_reduce_duplicate_rows():
    m = FieldMatrix(((1, 1), (1, 1)), GF2)
    rref, rank, pivots = row_reduce(m)
    assert rank == 1
    assert pivots == (0,)
    assert rref.rows == ((1, 1), (0, 0))


def test_row_reduce_identity():
    m = FieldMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1)), GF2)
    rref, rank, pivots = row_reduce(m)
    assert rank == 3
    assert pivots == (0, 1, 2)
    assert rref == m


def test_row_reduce_rm_matrix_full_rank():
    _, rank, _ = row_reduce(rm_generator(4, "nonsystematic"))
    assert rank == 4


def _matrices():
    def build(data):
        q, rows = data
        return FieldMatrix(tuple(tuple(r) for r in rows), FieldOrder(q))

    return st.sampled_from([2, 3]).flatmap(
        lambda q: st.tuples(
            st.just(q),
            st.integers(1, 4).flatmap(
                lambda k: st.integers(1, 5).flatmap(
                    lambda n: st.lists(
                        st.lists(st.integers(0, q - 1), min_size=n, max_size=n),
                        min_size=k,
                        max_size=k,
                    )
                )
            ),
        ).map(build)
    )


@given(_matrices())
@settings(max_examples=80, deadline=None)
def test_row_reduce_idempotent(m):
    rref, rank, pivots = row_reduce(m)
    again, rank2, pivots2 = row_reduce(rref)
    assert again == rref
    assert (rank2, pivots2) == (rank, pivots)


def test_solve_linear_two_by_two():
    cols = [FieldVector((0, 1), GF2), FieldVector((1, 1), GF2)]
    target = FieldVector((1, 0), GF2)
    alpha = solve_linear(cols, target)
    # hand check: 1*(0,1) + 1*(1,1) = (1,0) over GF(2)
    assert alpha == (1, 1)


def test_solve_linear_outside_span():
    cols = [FieldVector((1, 0), GF2)]
    assert solve_linear(cols, FieldVector((0, 1), GF2)) is None


def test_solve_linear_identity_columns():
    cols = [FieldVector((1, 0), GF2), FieldVector((0, 1), GF2)]
    assert solve_linear(cols, FieldVector((1, 0), GF2)) == (1, 0)


def test_solve_linear_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_linear([FieldVector((1, 0), GF2)], FieldVector((1, 0, 0), GF2))


@given(_matrices())
@settings(max_examples=80, deadline=None)
def test_solve_linear_recompute_or_rank_certificate(m):
    cols = m.columns()
    for i in range(m.nrows):
        target = unit_vector(i, m.nrows, m.order)
        alpha = solve_linear(cols, target)
        if alpha is None:
            assert vector_rank(cols) < vector_rank(cols + [target])
        else:
            acc = FieldVector((0,) * m.nrows, m.order)
            for a, c in zip(alpha, cols):
                acc = acc.add(c.scale(a))
            assert acc == target


def test_enumerate_vectors_listings():
    got = [v.entries for v in enumerate_vectors(2, GF2, nonzero_only=True)]
    assert got == [(0, 1), (1, 0), (1, 1)]
    got = [v.entries for v in enumerate_vectors(1, FieldOrder(3))]
    assert got == [(0,), (1,), (2,)]
    assert sum(1 for _ in enumerate_vectors(3, GF2, nonzero_only=True)) == 7


@pytest.mark.parametrize("q,length", [(2, 4), (3, 3), (5, 2)])
def test_enumerate_vectors_count_order_uniqueness(q, length):
    order = FieldOrder(q)
    seen = [v.entries for v in enumerate_vectors(length, order)]
    assert len(seen) == q**length
    assert len(set(seen)) == len(seen)
    assert seen == sorted(seen)
