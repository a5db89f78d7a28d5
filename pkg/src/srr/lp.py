"""Exact linear programming over the rationals.

A dense two-phase simplex.  Pivoting uses Dantzig's rule while the
objective moves and switches permanently to Bland's rule after a run of
degenerate pivots, which keeps the guaranteed termination of Bland without
its crawl.  Every number is an exact rational: the public API speaks
`fractions.Fraction`, while the tableau internally uses gmpy2's mpq when
available (several times faster, identical semantics).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MalformedLP
from .recovery import RecoveryCatalog

try:
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _num = Fraction

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Consecutive degenerate pivots tolerated before switching to Bland's rule.
_STALL_LIMIT = 30


def _exact(value) -> Fraction:
    return Fraction(value.numerator, value.denominator)

LE = "<="
EQ = "="
GE = ">="


@dataclass(frozen=True)
class LinearProgram:
    """max/min objective.x subject to rows[i].x (<=,=,>=) rhs[i].

    `nonneg[j]` selects the lower bound of variable j: True for x_j >= 0,
    False for a free variable.
    """

    maximize: bool
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    relations: tuple[str, ...]
    rhs: tuple[Fraction, ...]
    nonneg: tuple[bool, ...]


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None


def _validate(lp: LinearProgram) -> None:
    nvars = len(lp.objective)
    if len(lp.nonneg) != nvars:
        raise MalformedLP("variable bound flags do not match objective length")
    if not len(lp.rows) == len(lp.relations) == len(lp.rhs):
        raise MalformedLP("constraint blocks have inconsistent lengths")
    if any(len(r) != nvars for r in lp.rows):
        raise MalformedLP("constraint row width does not match variable count")
    if any(rel not in (LE, EQ, GE) for rel in lp.relations):
        raise MalformedLP("relation must be one of <=, =, >=")


def _run_simplex(tab: list[list], basis: list[int], cost: list, ncols: int) -> str:
    """Maximize cost.x over the tableau in place; 'optimal' or 'unbounded'.

    The leaving row always breaks ratio ties by smallest basic index.  The
    entering column follows Dantzig until _STALL_LIMIT consecutive pivots
    leave the objective unchanged, then Bland from that point on: strict
    improvements never revisit a basis, so only Bland's cycle-free rule is
    ever exercised on long degenerate runs and termination is guaranteed.
    """
    m = len(tab)
    zrow = [
        (cost[j] if j < ncols else 0)
        - sum(cost[basis[i]] * tab[i][j] for i in range(m))
        for j in range(ncols + 1)
    ]
    bland = False
    stall = 0
    level = zrow[ncols]
    while True:
        enter = None
        if bland:
            enter = next((j for j in range(ncols) if zrow[j] > 0), None)
        else:
            top = 0
            for j in range(ncols):
                v = zrow[j]
                if v > top:
                    top = v
                    enter = j
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for r in range(m):
            coef = tab[r][enter]
            if coef > 0:
                ratio = tab[r][ncols] / coef
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[r] < basis[leave])
                ):
                    best = ratio
                    leave = r
        if leave is None:
            return "unbounded"
        piv = tab[leave][enter]
        row = [v / piv for v in tab[leave]]
        tab[leave] = row
        basis[leave] = enter
        for r in range(m):
            if r != leave:
                f = tab[r][enter]
                if f:
                    tab[r] = [a - f * b for a, b in zip(tab[r], row)]
        f = zrow[enter]
        if f:
            zrow = [a - f * b for a, b in zip(zrow, row)]
        if not bland:
            if zrow[ncols] == level:
                stall += 1
                if stall > _STALL_LIMIT:
                    bland = True
            else:
                stall = 0
                level = zrow[ncols]


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Exact optimum of `lp`, or infeasible/unbounded status."""
    _validate(lp)
    nvars = len(lp.objective)
    sense = 1 if lp.maximize else -1
    zero = _num(0)
    one = _num(1)

    # Free variables are split as x = x+ - x-.
    col_of: list[tuple[int, int | None]] = []
    ncore = 0
    for j in range(nvars):
        if lp.nonneg[j]:
            col_of.append((ncore, None))
            ncore += 1
        else:
            col_of.append((ncore, ncore + 1))
            ncore += 2

    m = len(lp.rows)
    arows: list[list] = []
    rels: list[str] = []
    bvec: list = []
    for row, rel, b in zip(lp.rows, lp.relations, lp.rhs):
        expanded = [zero] * ncore
        for j, coef in enumerate(row):
            val = _num(Fraction(coef))
            pos, neg = col_of[j]
            expanded[pos] = val
            if neg is not None:
                expanded[neg] = -val
        b = _num(Fraction(b))
        if b < 0:
            expanded = [-v for v in expanded]
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        arows.append(expanded)
        rels.append(rel)
        bvec.append(b)

    nslack = sum(1 for rel in rels if rel != EQ)
    nart = sum(1 for rel in rels if rel != LE)
    ncols = ncore + nslack
    tab: list[list] = []
    basis: list[int] = []
    slack_at = ncore
    art_at = ncols
    for r in range(m):
        line = arows[r] + [zero] * (nslack + nart) + [bvec[r]]
        if rels[r] == LE:
            line[slack_at] = one
            basis.append(slack_at)
            slack_at += 1
        elif rels[r] == GE:
            line[slack_at] = -one
            slack_at += 1
            line[art_at] = one
            basis.append(art_at)
            art_at += 1
        else:
            line[art_at] = one
            basis.append(art_at)
            art_at += 1
        tab.append(line)

    if nart:
        width = ncols + nart
        cost1 = [zero] * ncols + [-one] * nart
        # Phase 1 cannot be unbounded: the objective is bounded above by 0.
        _run_simplex(tab, basis, cost1, width)
        if sum(tab[r][width] for r in range(m) if basis[r] >= ncols) != 0:
            return LPSolution("infeasible")
        # Pivot leftover zero-level artificials out; drop rows that are
        # redundant combinations of earlier ones.
        for r in range(m - 1, -1, -1):
            if basis[r] < ncols:
                continue
            enter = next((j for j in range(ncols) if tab[r][j] != 0), None)
            if enter is None:
                del tab[r]
                del basis[r]
                continue
            piv = tab[r][enter]
            row = [v / piv for v in tab[r]]
            tab[r] = row
            basis[r] = enter
            for i in range(len(tab)):
                if i != r and tab[i][enter]:
                    f = tab[i][enter]
                    tab[i] = [a - f * b for a, b in zip(tab[i], row)]
        m = len(tab)
        tab = [line[:ncols] + [line[-1]] for line in tab]

    cost2 = [zero] * ncols
    for j in range(nvars):
        val = sense * _num(Fraction(lp.objective[j]))
        pos, neg = col_of[j]
        cost2[pos] = val
        if neg is not None:
            cost2[neg] = -val
    status = _run_simplex(tab, basis, cost2, ncols)
    if status == "unbounded":
        return LPSolution("unbounded")

    core = [zero] * ncore
    for r in range(len(tab)):
        if basis[r] < ncore:
            core[basis[r]] = tab[r][-1]
    point = []
    for j in range(nvars):
        pos, neg = col_of[j]
        raw = core[pos] - (core[neg] if neg is not None else zero)
        point.append(_exact(raw))
    value = sum((Fraction(c) * x for c, x in zip(lp.objective, point)), _ZERO)
    return LPSolution("optimal", value, tuple(point))


def build_primal(
    catalog: RecoveryCatalog,
    mu: Sequence[Fraction | int],
    h: Sequence[Fraction | int],
) -> LinearProgram:
    """The service LP: maximize h.demand over feasible rate allocations.

    Variables are the per-file demands followed by one split rate per
    recovery set; demands stay explicit and are tied to their splits by
    equality rows, with one capacity row per server.
    """
    k, n = catalog.k, catalog.n
    mu = tuple(Fraction(v) for v in mu)
    h = tuple(Fraction(v) for v in h)
    if len(mu) != n:
        raise MalformedLP(f"expected {n} server rates, got {len(mu)}")
    if len(h) != k:
        raise MalformedLP(f"expected {k} objective weights, got {len(h)}")
    offsets = []
    pos = k
    for i in range(k):
        offsets.append(pos)
        pos += len(catalog.sets[i])
    nvars = pos

    rows: list[tuple[Fraction, ...]] = []
    rels: list[str] = []
    rhs: list[Fraction] = []
    for i in range(k):
        row = [_ZERO] * nvars
        row[i] = _ONE
        for j in range(len(catalog.sets[i])):
            row[offsets[i] + j] = Fraction(-1)
        rows.append(tuple(row))
        rels.append(EQ)
        rhs.append(_ZERO)
    by_server: list[list[int]] = [[] for _ in range(n)]
    for i in range(k):
        for j, rset in enumerate(catalog.sets[i]):
            for server in rset.columns:
                by_server[server].append(offsets[i] + j)
    for server in range(n):
        row = [_ZERO] * nvars
        for var in by_server[server]:
            row[var] = _ONE
        rows.append(tuple(row))
        rels.append(LE)
        rhs.append(mu[server])

    objective = tuple(h) + (_ZERO,) * (nvars - k)
    return LinearProgram(
        maximize=True,
        objective=objective,
        rows=tuple(rows),
        relations=tuple(rels),
        rhs=tuple(rhs),
        nonneg=(True,) * nvars,
    )


def build_dual(
    catalog: RecoveryCatalog,
    mu: Sequence[Fraction | int],
    h: Sequence[Fraction | int],
) -> LinearProgram:
    """Dual of the service LP: free prices per file, nonnegative per server."""
    k, n = catalog.k, catalog.n
    mu = tuple(Fraction(v) for v in mu)
    h = tuple(Fraction(v) for v in h)
    if len(mu) != n:
        raise MalformedLP(f"expected {n} server rates, got {len(mu)}")
    if len(h) != k:
        raise MalformedLP(f"expected {k} objective weights, got {len(h)}")
    nvars = k + n

    rows: list[tuple[Fraction, ...]] = []
    rels: list[str] = []
    rhs: list[Fraction] = []
    for i in range(k):
        row = [_ZERO] * nvars
        row[i] = _ONE
        rows.append(tuple(row))
        rels.append(GE)
        rhs.append(h[i])
    for i in range(k):
        for rset in catalog.sets[i]:
            row = [_ZERO] * nvars
            row[i] = _ONE
            for server in rset.columns:
                row[k + server] = Fraction(-1)
            rows.append(tuple(row))
            rels.append(LE)
            rhs.append(_ZERO)

    objective = (_ZERO,) * k + mu
    return LinearProgram(
        maximize=False,
        objective=objective,
        rows=tuple(rows),
        relations=tuple(rels),
        rhs=tuple(rhs),
        nonneg=(False,) * k + (True,) * n,
    )


def check_duality(
    catalog: RecoveryCatalog,
    mu: Sequence[Fraction | int],
    h: Sequence[Fraction | int],
) -> bool:
    """True iff the primal and dual optima coincide exactly."""
    primal = solve_lp(build_primal(catalog, mu, h))
    dual = solve_lp(build_dual(catalog, mu, h))
    return (
        primal.status == "optimal"
        and dual.status == "optimal"
        and primal.value == dual.value
    )
