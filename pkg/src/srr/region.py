"""Service rate region computation.

The region is grown from the axis maxima by repeatedly hulling the known
points and pushing every hull facet outward with an exact LP until no facet
moves.  An independent Fourier-Motzkin projection of the allocation
polytope provides an oracle for cross-checking small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch, OracleTooLarge
from .lp import EQ, LE, LinearProgram, _exact, _num, _run_simplex, build_primal, solve_lp
from .polytope import (
    DDState,
    Facet,
    Polytope,
    Vertex,
    _lift_point,
    _tight_rank,
    hull_to_hrep,
    polytope_from_hrep,
)
from .recovery import RecoveryCatalog

_ZERO = Fraction(0)


@dataclass
class Allocation:
    """Per-recovery-set rate split witnessing that a demand vector is servable."""

    rates: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def demand(self, k: int) -> tuple[Fraction, ...]:
        out = [_ZERO] * k
        for (i, _), rate in self.rates.items():
            out[i] += rate
        return tuple(out)


def allocation_is_valid(
    catalog: RecoveryCatalog,
    mu: Sequence[Fraction | int],
    demand: Sequence[Fraction | int],
    alloc: Allocation,
) -> bool:
    """Exact recheck of the demand and capacity constraints."""
    mu = [Fraction(v) for v in mu]
    demand = [Fraction(v) for v in demand]
    if len(mu) != catalog.n or len(demand) != catalog.k:
        return False
    per_file = [_ZERO] * catalog.k
    load = [_ZERO] * catalog.n
    for (i, j), rate in alloc.rates.items():
        if not (0 <= i < catalog.k and 0 <= j < len(catalog.sets[i])):
            return False
        if rate < 0:
            return False
        per_file[i] += rate
        for server in catalog.sets[i][j].columns:
            load[server] += rate
    if per_file != demand:
        return False
    return all(load[l] <= mu[l] for l in range(catalog.n))


def _check_mu(catalog: RecoveryCatalog, mu: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    out = tuple(Fraction(v) for v in mu)
    if len(out) != catalog.n:
        raise DimensionMismatch(f"expected {catalog.n} server rates, got {len(out)}")
    if any(v < 0 for v in out):
        raise ValueError("server rates must be nonnegative")
    return out


def axis_maxima(
    catalog: RecoveryCatalog, mu: Sequence[Fraction | int]
) -> tuple[Fraction, ...]:
    """Largest servable rate per file with all other demands at zero."""
    mu = _check_mu(catalog, mu)
    out = []
    for i in range(catalog.k):
        h = tuple(1 if j == i else 0 for j in range(catalog.k))
        sol = solve_lp(build_primal(catalog, mu, h))
        out.append(sol.value)
    return tuple(out)


def membership(
    catalog: RecoveryCatalog,
    mu: Sequence[Fraction | int],
    demand: Sequence[Fraction | int],
) -> Allocation | None:
    """An exact allocation witness for `demand`, or None when unservable."""
    mu = _check_mu(catalog, mu)
    d = tuple(Fraction(v) for v in demand)
    if len(d) != catalog.k:
        raise DimensionMismatch(f"expected {catalog.k} demands, got {len(d)}")
    if any(v < 0 for v in d):
        raise ValueError("demands must be nonnegative")
    offsets = []
    pos = 0
    for i in range(catalog.k):
        offsets.append(pos)
        pos += len(catalog.sets[i])
    nvars = pos
    rows: list[tuple[Fraction, ...]] = []
    rels: list[str] = []
    rhs: list[Fraction] = []
    for i in range(catalog.k):
        row = [_ZERO] * nvars
        for j in range(len(catalog.sets[i])):
            row[offsets[i] + j] = Fraction(1)
        rows.append(tuple(row))
        rels.append(EQ)
        rhs.append(d[i])
    for server in range(catalog.n):
        row = [_ZERO] * nvars
        for i in range(catalog.k):
            for j, rset in enumerate(catalog.sets[i]):
                if server in rset.columns:
                    row[offsets[i] + j] = Fraction(1)
        rows.append(tuple(row))
        rels.append(LE)
        rhs.append(mu[server])
    lp = LinearProgram(
        maximize=True,
        objective=(_ZERO,) * nvars,
        rows=tuple(rows),
        relations=tuple(rels),
        rhs=tuple(rhs),
        nonneg=(True,) * nvars,
    )
    sol = solve_lp(lp)
    if sol.status != "optimal":
        return None
    alloc = Allocation()
    for i in range(catalog.k):
        for j in range(len(catalog.sets[i])):
            rate = sol.point[offsets[i] + j]
            if rate:
                alloc.rates[(i, j)] = rate
    return alloc


def _rays_to_facets(state: DDState) -> tuple[Facet, ...]:
    return tuple(sorted((tuple(-v for v in ray[1:]), ray[0]) for ray in state.rays))


class _SupportSolver:
    """Evaluates max h.demand over the service region, exactly and cached.

    Works on the capacity-only reformulation of the service LP: demands are
    substituted out and the columns of files with nonpositive weight are
    dropped (an optimal allocation never uses them), so the slack basis is
    feasible and no phase-1 work is needed.  Returns the optimum together
    with the demand vector of the optimizing allocation, which is a point
    of the region.
    """

    def __init__(self, catalog: RecoveryCatalog, mu: tuple[Fraction, ...]):
        self.k = catalog.k
        self.n = catalog.n
        self.file_of: list[int] = []
        self.colsets: list[tuple[int, ...]] = []
        for i in range(catalog.k):
            for rset in catalog.sets[i]:
                self.file_of.append(i)
                self.colsets.append(rset.columns)
        self.mu = [_num(v) for v in mu]
        self.cache: dict[tuple[int, ...], tuple[Fraction, Vertex]] = {}

    def __call__(self, h: tuple[int, ...]) -> tuple[Fraction, Vertex]:
        hit = self.cache.get(h)
        if hit is not None:
            return hit
        live = [t for t, i in enumerate(self.file_of) if h[i] > 0]
        nlive = len(live)
        ncols = nlive + self.n
        zero = _num(0)
        one = _num(1)
        tab = []
        for s in range(self.n):
            row = [one if s in self.colsets[t] else zero for t in live]
            row += [one if r == s else zero for r in range(self.n)]
            row.append(self.mu[s])
            tab.append(row)
        basis = [nlive + s for s in range(self.n)]
        cost = [_num(h[self.file_of[t]]) for t in live] + [zero] * self.n
        status = _run_simplex(tab, basis, cost, ncols)
        assert status == "optimal"  # capacity rows bound every demand
        demand = [_ZERO] * self.k
        for r, b in enumerate(basis):
            if b < nlive and tab[r][ncols]:
                demand[self.file_of[live[b]]] += _exact(tab[r][ncols])
        point = tuple(demand)
        value = sum(
            (Fraction(h[i]) * d for i, d in enumerate(point)), _ZERO
        )
        result = (value, point)
        self.cache[h] = result
        return result


def compute_region(
    catalog: RecoveryCatalog, mu: Sequence[Fraction | int]
) -> Polytope:
    """Exact service rate region by iterative facet expansion.

    Starts from the origin plus the axis maxima, then scans hull facets in
    canonical order: the first facet whose support LP beats its offset
    contributes the optimal point and the hull is rebuilt.  Facets with no
    positive coefficient can never move (the region sits in the nonnegative
    orthant and contains the origin) and are skipped.
    """
    mu = _check_mu(catalog, mu)
    k = catalog.k
    support = _SupportSolver(catalog, mu)

    origin = (_ZERO,) * k
    points: list[Vertex] = [origin]
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        top, _ = support(e)
        vertex = tuple(top if j == i else _ZERO for j in range(k))
        if vertex != origin:
            points.append(vertex)

    state: DDState | None = None
    facets: tuple[Facet, ...] = ()
    while True:
        if state is None:
            try:
                state = DDState(k + 1, [_lift_point(p) for p in points])
            except ValueError:
                state = None  # hull still lower-dimensional
        if state is not None:
            facets = _rays_to_facets(state)
        else:
            facets = hull_to_hrep(points).facets
        grew = False
        for coeffs, rhs in facets:
            if all(c <= 0 for c in coeffs):
                continue
            value, point = support(coeffs)
            if value > rhs:
                points.append(point)
                if state is not None:
                    state.add_row(_lift_point(point))
                grew = True
                break
        if not grew:
            break

    unique = sorted(set(points))
    verts = tuple(p for p in unique if _tight_rank(p, facets) == k)
    return Polytope(
        k,
        verts,
        tuple(sorted(set(facets))),
        unit_rates=all(v == 1 for v in mu),
    )


def _int_rows_gcd(coeffs: list[int], rhs: int) -> tuple[tuple[int, ...], int]:
    g = gcd(*coeffs, rhs) if any(coeffs) or rhs else 1
    if g > 1:
        coeffs = [c // g for c in coeffs]
        rhs //= g
    return tuple(coeffs), rhs


def _dominance_filter(
    rows: list[tuple[tuple[int, ...], int, int]]
) -> list[tuple[tuple[int, ...], int, int]]:
    """Keep one row per coefficient vector: the smallest right-hand side."""
    best: dict[tuple[int, ...], tuple[int, int]] = {}
    for coeffs, rhs, hist in rows:
        cur = best.get(coeffs)
        if cur is None or rhs < cur[0] or (rhs == cur[0] and hist.bit_count() < cur[1].bit_count()):
            best[coeffs] = (rhs, hist)
    return sorted((c, rb[0], rb[1]) for c, rb in best.items())


def fm_projection_oracle(
    catalog: RecoveryCatalog,
    mu: Sequence[Fraction | int],
    limit: int = 24,
) -> Polytope:
    """Independent oracle: project the allocation polytope onto demand space.

    The demand equalities are removed first by exact substitution; the
    remaining split-rate variables fall to Fourier-Motzkin elimination.
    Kohler's ancestor-count criterion (a row combined from more than
    steps+1 original rows is implied by others) keeps the intermediate
    systems small, and a final per-row LP pass leaves the minimal
    H-representation.
    """
    mu = _check_mu(catalog, mu)
    total = catalog.total
    if total > limit:
        raise OracleTooLarge(
            f"instance has {total} recovery sets, oracle limit is {limit}"
        )
    k = catalog.k
    width = k + total
    offsets = []
    pos = k
    for i in range(k):
        offsets.append(pos)
        pos += len(catalog.sets[i])

    eq_rows: list[tuple[tuple[int, ...], int]] = []
    le_rows: list[tuple[tuple[int, ...], int]] = []
    for i in range(k):
        row = [0] * width
        row[i] = 1
        for j in range(len(catalog.sets[i])):
            row[offsets[i] + j] = -1
        eq_rows.append((tuple(row), 0))
    for server in range(catalog.n):
        row = [0] * width
        for i in range(k):
            for j, rset in enumerate(catalog.sets[i]):
                if server in rset.columns:
                    row[offsets[i] + j] = 1
        cap = mu[server]
        scaled = [c * cap.denominator for c in row]
        le_rows.append(_int_rows_gcd(scaled, cap.numerator))
    for v in range(width):
        row = [0] * width
        row[v] = -1
        le_rows.append((tuple(row), 0))

    # Substitution pass: each demand equality eliminates one split variable.
    remaining = set(range(k, width))
    demand_eqs: list[tuple[tuple[int, ...], int]] = []
    for coeffs, rhs in eq_rows:
        v = next((c for c in sorted(remaining) if coeffs[c]), None)
        if v is None:
            demand_eqs.append((coeffs, rhs))
            continue
        if coeffs[v] < 0:
            coeffs = tuple(-c for c in coeffs)
            rhs = -rhs
        pivot = coeffs[v]
        updated = []
        for rc, rb in le_rows:
            if rc[v]:
                f = rc[v]
                new = [pivot * a - f * b for a, b in zip(rc, coeffs)]
                updated.append(_int_rows_gcd(new, pivot * rb - f * rhs))
            else:
                updated.append((rc, rb))
        le_rows = updated
        remaining.discard(v)

    # Fourier-Motzkin on the remaining split variables, with history masks.
    rows = [
        (coeffs, rhs, 1 << idx) for idx, (coeffs, rhs) in enumerate(le_rows)
    ]
    rows = _dominance_filter([r for r in rows if any(r[0])])
    steps = 0
    while remaining:
        best = None
        for v in sorted(remaining):
            p = sum(1 for r in rows if r[0][v] > 0)
            m = sum(1 for r in rows if r[0][v] < 0)
            if best is None or p * m < best[0]:
                best = (p * m, v)
        v = best[1]
        steps += 1
        pos_rows = [r for r in rows if r[0][v] > 0]
        neg_rows = [r for r in rows if r[0][v] < 0]
        keep = [r for r in rows if r[0][v] == 0]
        for pc, pb, ph in pos_rows:
            for nc, nb, nh in neg_rows:
                hist = ph | nh
                if hist.bit_count() > steps + 1:
                    continue  # Kohler: combined from too many ancestors
                a, b = pc[v], -nc[v]
                new = [b * x + a * y for x, y in zip(pc, nc)]
                coeffs, rhs = _int_rows_gcd(new, b * pb + a * nb)
                if any(coeffs):
                    keep.append((coeffs, rhs, hist))
        rows = _dominance_filter(keep)
        remaining.discard(v)

    facets = [_int_rows_gcd(list(coeffs[:k]), rhs) for coeffs, rhs, _ in rows]
    for coeffs, rhs in demand_eqs:
        head = list(coeffs[:k])
        if any(head):
            facets.append(_int_rows_gcd(head, rhs))
            facets.append(_int_rows_gcd([-c for c in head], -rhs))
    return polytope_from_hrep(
        k, facets, prune=True, unit_rates=all(v == 1 for v in mu)
    )
