"""Exhaustive enumeration of reduced recovery sets.

A reduced recovery set for file i is a linearly independent column subset
whose unique combination with all-nonzero coefficients equals e_i.  The
catalog of all such sets per file is the combinatorial input to the
service LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import RankDeficient, ZeroColumn
from .fields import (
    FieldMatrix,
    FieldOrder,
    FieldVector,
    row_reduce,
    solve_linear,
    unit_vector,
    vector_rank,
)


@dataclass(frozen=True)
class RecoverySet:
    """Column indices (0-based, ascending) and coefficients recovering e_i."""

    file_index: int
    columns: tuple[int, ...]
    coefficients: tuple[int, ...]


@dataclass(frozen=True)
class RecoveryCatalog:
    """Per-file recovery sets, deterministically ordered."""

    k: int
    n: int
    order: FieldOrder
    sets: tuple[tuple[RecoverySet, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def total(self) -> int:
        return sum(self.counts)


def _check_generator(g: FieldMatrix) -> None:
    for j in range(g.ncols):
        if g.column(j).is_zero():
            raise ZeroColumn(f"column {j + 1} is zero")
    if row_reduce(g)[1] < g.nrows:
        raise RankDeficient(f"matrix rank below {g.nrows}")


def enumerate_recovery_sets(g: FieldMatrix, i: int) -> tuple[RecoverySet, ...]:
    """All reduced recovery sets for file i (0-based).

    Iterates subsets by cardinality 1..k, keeps independent subsets whose
    unique solution for e_i has every coefficient nonzero.  Ordered by
    (cardinality, column indices).
    """
    _check_generator(g)
    k, n = g.nrows, g.ncols
    if not 0 <= i < k:
        raise ValueError(f"file index {i} out of range for k={k}")
    target = unit_vector(i, k, g.order)
    cols = g.columns()
    found: list[RecoverySet] = []
    for size in range(1, k + 1):
        for subset in combinations(range(n), size):
            chosen = [cols[j] for j in subset]
            if vector_rank(chosen) < size:
                continue
            alpha = solve_linear(chosen, target)
            if alpha is None or any(a == 0 for a in alpha):
                continue
            found.append(RecoverySet(i, subset, alpha))
    return tuple(found)


def build_catalog(g: FieldMatrix) -> RecoveryCatalog:
    """Recovery catalog over all k files of a full-length rank-k matrix."""
    sets = tuple(enumerate_recovery_sets(g, i) for i in range(g.nrows))
    return RecoveryCatalog(k=g.nrows, n=g.ncols, order=g.order, sets=sets)


def validate_recovery_set(g: FieldMatrix, r: RecoverySet) -> bool:
    """Exact recheck of the three recovery-set invariants; False on violation."""
    if not r.columns or len(r.columns) != len(r.coefficients):
        return False
    if list(r.columns) != sorted(set(r.columns)):
        return False
    if any(not 0 <= j < g.ncols for j in r.columns):
        return False
    if not 0 <= r.file_index < g.nrows:
        return False
    if any(a % g.order.q == 0 for a in r.coefficients):
        return False
    chosen = [g.column(j) for j in r.columns]
    if vector_rank(chosen) < len(chosen):
        return False
    acc = FieldVector((0,) * g.nrows, g.order)
    for coeff, col in zip(r.coefficients, chosen):
        acc = acc.add(col.scale(coeff))
    return acc == unit_vector(r.file_index, g.nrows, g.order)
