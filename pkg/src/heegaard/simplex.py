"""Exact feasibility of ``A x = b, x >= 0`` by phase one of the simplex method.

Artificial variables are driven out using Bland's rule, so the method always
terminates, and all arithmetic is over ``Fraction``.  When the system is
infeasible the final simplex multipliers give a Farkas certificate.
"""
from __future__ import annotations

from fractions import Fraction


def phase_one(A: list[list[int]], b: list[int]) -> tuple[list[Fraction] | None, list[Fraction] | None]:
    """Return ``(x, None)`` with ``A x = b, x >= 0`` or ``(None, y)`` with
    ``y^T A >= 0`` and ``y^T b < 0``."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n, None
    flip = [-1 if rhs < 0 else 1 for rhs in b]
    T = [
        [Fraction(f * x) for x in row] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(f * rhs)]
        for i, (row, rhs, f) in enumerate(zip(A, b, flip))
    ]
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of "minimise the sum of artificials"; last entry is -objective
    cost = [Fraction(0)] * (width + 1)
    for r in T:
        for j in range(n):
            cost[j] -= r[j]
        cost[width] -= r[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(T):
            if r[enter] > 0:
                key = (r[width] / r[enter], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        _pivot(T, cost, best[1], enter)
        basis[best[1]] = enter
    if cost[width] == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = T[i][width]
        return x, None
    # multiplier of row i is 1 - (reduced cost of its artificial column)
    y = [-(1 - cost[n + i]) * flip[i] for i in range(m)]
    return None, y


def feasible_point(A: list[list[int]], b: list[int]) -> list[Fraction] | None:
    return phase_one(A, b)[0]


def _pivot(T, cost, r, c):
    p = T[r][c]
    T[r] = [v / p for v in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c]:
            f = row[c]
            T[i] = [v - f * w for v, w in zip(row, T[r])]
    if cost[c]:
        f = cost[c]
        cost[:] = [v - f * w for v, w in zip(cost, T[r])]
