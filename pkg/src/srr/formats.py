"""Text file formats for generator matrices and region polytopes.

Both formats are canonical: serialize(parse(serialize(x))) is byte-identical,
lines are sorted, and rationals are always reduced.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import FieldMatrix, FieldOrder, row_reduce
from .polytope import Polytope

OUTER_BOUND_TAG = "outer-bound-only"


class ParseError(ValueError):
    """Malformed or invalid input file."""


def parse_rational(token: str) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {token!r}") from exc


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def serialize_matrix(g: FieldMatrix) -> str:
    lines = [f"{g.order.q} {g.nrows} {g.ncols}"]
    lines += [" ".join(str(e) for e in row) for row in g.rows]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FieldMatrix:
    """Parse and fully validate a generator matrix file.

    Rejects zero columns and rank-deficient matrices, naming the offending
    column or row in the diagnostic.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError("header must be 'q k n'")
    try:
        q, k, n = (int(x) for x in head)
    except ValueError as exc:
        raise ParseError("header must hold three integers") from exc
    try:
        order = FieldOrder(q)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if k < 1 or n < 1:
        raise ParseError("dimensions must be positive")
    if len(lines) != k + 1:
        raise ParseError(f"expected {k} matrix rows, found {len(lines) - 1}")
    rows = []
    for idx, line in enumerate(lines[1:], start=1):
        parts = line.split()
        if len(parts) != n:
            raise ParseError(f"row {idx} has {len(parts)} entries, expected {n}")
        try:
            row = tuple(int(x) for x in parts)
        except ValueError as exc:
            raise ParseError(f"row {idx} holds a non-integer") from exc
        if any(not 0 <= e < q for e in row):
            raise ParseError(f"row {idx} has entries outside [0, {q})")
        rows.append(row)
    g = FieldMatrix(tuple(rows), order)
    for j in range(n):
        if g.column(j).is_zero():
            raise ParseError(f"column {j + 1} is zero")
    _, rank, _ = row_reduce(g)
    if rank < k:
        for r in range(1, k + 1):
            sub = FieldMatrix(tuple(g.rows[:r]), order)
            if row_reduce(sub)[1] < r:
                raise ParseError(f"row {r} is linearly dependent on earlier rows")
    return g


def serialize_polytope(p: Polytope) -> str:
    lines = [f"dim {p.dim}"]
    for v in p.vertices:
        lines.append("V " + " ".join(format_rational(x) for x in v))
    for coeffs, rhs in p.facets:
        lines.append("F " + " ".join(str(c) for c in coeffs) + f" {rhs}")
    if p.outer_bound_only:
        lines.append(f"TAG {OUTER_BOUND_TAG}")
    return "\n".join(lines) + "\n"


def parse_polytope(text: str) -> Polytope:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty polytope file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ParseError("first line must be 'dim k'")
    try:
        dim = int(head[1])
    except ValueError as exc:
        raise ParseError("dimension must be an integer") from exc
    if dim < 1:
        raise ParseError("dimension must be positive")
    vertices = []
    facets = []
    outer = False
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "V":
            if len(parts) != dim + 1:
                raise ParseError(f"vertex line needs {dim} coordinates: {line!r}")
            vertices.append(tuple(parse_rational(t) for t in parts[1:]))
        elif parts[0] == "F":
            if len(parts) != dim + 2:
                raise ParseError(
                    f"facet line needs {dim} coefficients and a bound: {line!r}"
                )
            try:
                numbers = [int(t) for t in parts[1:]]
            except ValueError as exc:
                raise ParseError(f"facet line holds a non-integer: {line!r}") from exc
            facets.append((tuple(numbers[:-1]), numbers[-1]))
        elif parts[0] == "TAG":
            if len(parts) != 2 or parts[1] != OUTER_BOUND_TAG:
                raise ParseError(f"unknown tag line: {line!r}")
            outer = True
        else:
            raise ParseError(f"unknown line kind: {line!r}")
    return Polytope(
        dim,
        tuple(sorted(vertices)),
        tuple(sorted(facets)),
        outer_bound_only=outer,
    )
