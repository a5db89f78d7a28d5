"""Arithmetic and linear algebra over prime fields GF(q).

Elements are canonical integers in [0, q); all operations are pure and all
containers immutable, so values are hashable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import DimensionMismatch


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldOrder:
    """A prime q together with the GF(q) element operations."""

    q: int

    def __post_init__(self) -> None:
        if not _is_prime(self.q):
            raise ValueError(f"field order must be prime, got {self.q}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        # Fermat: a^(q-2) is the inverse since q is prime.
        return pow(a, self.q - 2, self.q)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))


GF2 = FieldOrder(2)


def field_arith(order: FieldOrder, a: int, b: int | None, op: str) -> int:
    """Dispatch a single GF(q) operation by name.

    `op` is one of add, sub, mul, div, neg, inv; unary ops ignore `b`.
    """
    if op == "add":
        return order.add(a, b)
    if op == "sub":
        return order.sub(a, b)
    if op == "mul":
        return order.mul(a, b)
    if op == "div":
        return order.div(a, b)
    if op == "neg":
        return order.neg(a)
    if op == "inv":
        return order.inv(a)
    raise ValueError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class FieldVector:
    """Immutable vector with entries reduced mod q."""

    entries: tuple[int, ...]
    order: FieldOrder

    def __post_init__(self) -> None:
        if len(self.entries) == 0:
            raise ValueError("vector must be nonempty")
        q = self.order.q
        object.__setattr__(self, "entries", tuple(e % q for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def dot(self, other: "FieldVector") -> int:
        if len(self) != len(other) or self.order != other.order:
            raise DimensionMismatch("dot product needs equal length and field")
        return sum(a * b for a, b in zip(self.entries, other.entries)) % self.order.q

    def add(self, other: "FieldVector") -> "FieldVector":
        if len(self) != len(other) or self.order != other.order:
            raise DimensionMismatch("sum needs equal length and field")
        q = self.order.q
        return FieldVector(
            tuple((a + b) % q for a, b in zip(self.entries, other.entries)), self.order
        )

    def scale(self, c: int) -> "FieldVector":
        q = self.order.q
        return FieldVector(tuple((c * e) % q for e in self.entries), self.order)


def unit_vector(i: int, length: int, order: FieldOrder) -> FieldVector:
    """e_i with a one at 0-based position i."""
    return FieldVector(tuple(1 if j == i else 0 for j in range(length)), order)


@dataclass(frozen=True)
class FieldMatrix:
    """Immutable k x n matrix over GF(q), stored row-major."""

    rows: tuple[tuple[int, ...], ...]
    order: FieldOrder

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("matrix rows must have equal length")
        q = self.order.q
        object.__setattr__(
            self, "rows", tuple(tuple(e % q for e in r) for r in self.rows)
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def row(self, i: int) -> FieldVector:
        return FieldVector(self.rows[i], self.order)

    def column(self, j: int) -> FieldVector:
        return FieldVector(tuple(r[j] for r in self.rows), self.order)

    def columns(self) -> list[FieldVector]:
        return [self.column(j) for j in range(self.ncols)]


def matrix_from_columns(columns: Sequence[FieldVector]) -> FieldMatrix:
    if not columns:
        raise ValueError("need at least one column")
    order = columns[0].order
    if any(c.order != order or len(c) != len(columns[0]) for c in columns):
        raise DimensionMismatch("columns must share length and field")
    rows = tuple(tuple(c[i] for c in columns) for i in range(len(columns[0])))
    return FieldMatrix(rows, order)


def row_reduce(m: FieldMatrix) -> tuple[FieldMatrix, int, tuple[int, ...]]:
    """Reduced row-echelon form of `m`; returns (rref, rank, pivot columns)."""
    q = m.order.q
    work = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    pivot_row = 0
    for col in range(ncols):
        sel = next(
            (r for r in range(pivot_row, nrows) if work[r][col] % q != 0), None
        )
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = m.order.inv(work[pivot_row][col])
        work[pivot_row] = [(inv * e) % q for e in work[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and work[r][col] % q != 0:
                factor = work[r][col]
                work[r] = [
                    (e - factor * p) % q for e, p in zip(work[r], work[pivot_row])
                ]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == nrows:
            break
    rref = FieldMatrix(tuple(tuple(r) for r in work), m.order)
    return rref, len(pivots), tuple(pivots)


def vector_rank(vectors: Sequence[FieldVector]) -> int:
    """Rank of the span of `vectors`."""
    if not vectors:
        return 0
    m = FieldMatrix(tuple(v.entries for v in vectors), vectors[0].order)
    return row_reduce(m)[1]


def solve_linear(
    columns: Sequence[FieldVector], target: FieldVector
) -> tuple[int, ...] | None:
    """Solve sum_j alpha_j * columns[j] = target over GF(q).

    Returns one exact coefficient tuple, or None when the target lies outside
    the span.  Free coefficients are set to zero, so the answer is unique
    whenever the columns are linearly independent.
    """
    if not columns:
        return None if not target.is_zero() else ()
    order = target.order
    length = len(target)
    if any(c.order != order or len(c) != length for c in columns):
        raise DimensionMismatch("columns and target must share length and field")
    ncols = len(columns)
    aug = FieldMatrix(
        tuple(
            tuple(columns[j][i] for j in range(ncols)) + (target[i],)
            for i in range(length)
        ),
        order,
    )
    rref, _, pivots = row_reduce(aug)
    if ncols in pivots:
        return None  # inconsistent: pivot in the augmented column
    alpha = [0] * ncols
    for r, col in enumerate(pivots):
        alpha[col] = rref.rows[r][ncols]
    return tuple(alpha)


def enumerate_vectors(
    length: int, order: FieldOrder, nonzero_only: bool = False
) -> Iterator[FieldVector]:
    """All vectors of GF(q)^length in lexicographic order."""
    if length < 1:
        raise ValueError("length must be positive")
    for entries in product(range(order.q), repeat=length):
        if nonzero_only and not any(entries):
            continue
        yield FieldVector(entries, order)
