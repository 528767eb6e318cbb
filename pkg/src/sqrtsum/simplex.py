"""Exact rational simplex for the covering LP ``min 1.z  s.t.  A z >= 1,  z >= 0``.

The LP is solved through its dual ``max 1.y  s.t.  A^T y <= 1,  y >= 0``,
for which the all-slack basis is feasible, so no phase one is needed. Bland's
rule guarantees termination. The primal optimum is read off the dual's
reduced costs and is a vertex: the basic dual variables name the primal
constraints that are tight there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError, ResourceLimitError


@dataclass(frozen=True)
class CoveringSolution:
    z: tuple[Fraction, ...]
    tight: tuple[int, ...]  # row indices of A that are tight at z, one per basic dual variable
    objective: Fraction
    pivots: int


def solve_covering_lp(A, max_pivots: int = 100_000) -> CoveringSolution:
    """Optimal vertex of ``min sum(z)  s.t.  A z >= 1,  z >= 0`` in exact arithmetic."""
    t = len(A)
    if t == 0:
        raise InternalError("covering LP needs at least one constraint")
    n = len(A[0])
    ncols = t + n
    # dual tableau: one row per primal variable j, columns y_0..y_{t-1}, s_0..s_{n-1}, rhs
    rows = []
    for j in range(n):
        row = [Fraction(A[i][j]) for i in range(t)]
        row += [Fraction(int(j == c)) for c in range(n)]
        row.append(Fraction(1))
        rows.append(row)
    obj = [Fraction(-1)] * t + [Fraction(0)] * n + [Fraction(0)]
    basis = [t + j for j in range(n)]

    pivots = 0
    while True:
        entering = next((c for c in range(ncols) if obj[c] < 0), None)
        if entering is None:
            break
        best = None
        for r in range(n):
            a = rows[r][entering]
            if a > 0:
                ratio = rows[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            # dual unbounded means the primal is infeasible
            raise InternalError("covering LP is infeasible")
        r = best[1]
        pr = rows[r]
        inv = 1 / pr[entering]
        pr = [x * inv for x in pr]
        rows[r] = pr
        for i in range(n):
            if i != r:
                f = rows[i][entering]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        f = obj[entering]
        obj = [x - f * y for x, y in zip(obj, pr)]
        basis[r] = entering
        pivots += 1
        if pivots > max_pivots:
            raise ResourceLimitError(f"simplex exceeded {max_pivots} pivots")

    z = tuple(obj[t + j] for j in range(n))
    tight = tuple(sorted(b for b in basis if b < t))
    return CoveringSolution(z, tight, obj[-1], pivots)
