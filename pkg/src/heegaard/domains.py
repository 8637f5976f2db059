"""Domains, periodic domains and weak admissibility.

A domain is a tuple of integer coefficients, one per region, in region id
order.  Its boundary puts coefficient ``n(left) - n(right)`` on each arc; the
domain is periodic when that coefficient is constant along every curve.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .diagram import ALPHA, BETA, Diagram
from .linalg import hermite_rows, integer_kernel, vgcd
from .simplex import phase_one

Domain = tuple[int, ...]

__all__ = [
    "Domain",
    "BoundaryDecomposition",
    "AdmissibilityVerdict",
    "region_index",
    "marked_regions",
    "arc_boundary",
    "boundary_decomposition",
    "periodic_domain_lattice",
    "domain_from_alpha_boundary",
    "check_weak_admissibility",
    "domain_norms",
]


def region_index(d: Diagram) -> dict[int, int]:
    return {r.id: i for i, r in enumerate(d.regions)}


def marked_regions(d: Diagram) -> list[int]:
    """Distinct regions holding marked points, lowest point first."""
    out = []
    for r in d.point_regions():
        if r not in out:
            out.append(r)
    return out


def _check_len(d: Diagram, D) -> None:
    if len(D) != len(d.regions):
        raise ValueError(f"domain has {len(D)} coefficients but the diagram has {len(d.regions)} regions")


def arc_boundary(d: Diagram, D) -> dict[int, int]:
    """Coefficient of each arc in the boundary 1-chain of ``D``."""
    _check_len(d, D)
    idx = region_index(d)
    return {a.id: D[idx[d.left(a.id)]] - D[idx[d.right(a.id)]] for a in d.arcs}


@dataclass(frozen=True)
class BoundaryDecomposition:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    periodic: bool
    offending_arc: int | None = None


def boundary_decomposition(d: Diagram, D) -> BoundaryDecomposition:
    bd = arc_boundary(d, D)
    coeffs = {ALPHA: [], BETA: []}
    bad = None
    for fam in (ALPHA, BETA):
        for c in d.family_curves(fam):
            arcs = d.curve_arcs(c.id)
            x = bd[arcs[0].id]
            for a in arcs[1:]:
                if bd[a.id] != x and bad is None:
                    bad = a.id
            coeffs[fam].append(x)
    if bad is not None:
        return BoundaryDecomposition((), (), False, bad)
    return BoundaryDecomposition(tuple(coeffs[ALPHA]), tuple(coeffs[BETA]), True)


def _region_forms(d: Diagram) -> tuple[dict[int, list[int]], list[list[int]]]:
    """Write each region coefficient as a linear form in the curve coefficients.

    Walking a spanning tree of the region adjacency graph from the first marked
    region (value 0), crossing arc ``a`` from right to left adds the
    coefficient of its curve.  Returns the forms and the constraints that the
    remaining arcs and the other marked regions impose.
    """
    col = {c.id: i for i, c in enumerate(d.alphas + d.betas)}
    n = len(col)
    marks = marked_regions(d)
    root = marks[0] if marks else d.regions[0].id
    adj: dict[int, list] = {r.id: [] for r in d.regions}
    for a in d.arcs:
        adj[d.right(a.id)].append((d.left(a.id), a, 1))
        adj[d.left(a.id)].append((d.right(a.id), a, -1))
    form = {root: [0] * n}
    tree = set()
    queue = deque([root])
    while queue:
        r = queue.popleft()
        for w, a, s in adj[r]:
            if w not in form:
                f = list(form[r])
                f[col[a.curve]] += s
                form[w] = f
                tree.add(a.id)
                queue.append(w)
    rows = []
    for a in d.arcs:
        if a.id in tree:
            continue
        row = [x - y for x, y in zip(form[d.left(a.id)], form[d.right(a.id)])]
        row[col[a.curve]] -= 1
        if any(row):
            rows.append(row)
    for z in marks[1:]:
        if any(form[z]):
            rows.append(list(form[z]))
    return form, rows


def periodic_domain_lattice(d: Diagram) -> list[Domain]:
    """Hermite-reduced basis of periodic domains vanishing at every marked region."""
    form, rows = _region_forms(d)
    n = len(d.curves)
    rows = hermite_rows(rows) if rows else []
    ker = integer_kernel(rows, n) if rows else [[int(i == j) for j in range(n)] for i in range(n)]
    doms = [[sum(f * w for f, w in zip(form[r.id], v)) for r in d.regions] for v in ker]
    return [tuple(v) for v in hermite_rows(doms)]


def domain_from_alpha_boundary(d: Diagram, x) -> Domain:
    """The periodic domain with alpha boundary ``sum x_j alpha_j`` vanishing at the
    marked regions, built by walking across alpha arcs only.

    Raises ``ValueError`` when no such domain exists.
    """
    xs = {c.id: int(v) for c, v in zip(d.alphas, x)}
    if len(xs) != len(d.alphas):
        raise ValueError("need one coefficient per alpha curve")
    val: dict[int, int] = {}
    adj: dict[int, list] = {r.id: [] for r in d.regions}
    for a in d.arcs:
        if d.curve_map[a.curve].family != ALPHA:
            continue
        L, R = d.left(a.id), d.right(a.id)
        adj[R].append((L, xs[a.curve]))
        adj[L].append((R, -xs[a.curve]))
    starts = marked_regions(d)
    if not starts:
        raise ValueError("diagram has no marked point")
    for z in starts:
        val[z] = 0
    queue = deque(starts)
    while queue:
        r = queue.popleft()
        for w, step in adj[r]:
            if w not in val:
                val[w] = val[r] + step
                queue.append(w)
            elif val[w] != val[r] + step:
                raise ValueError("alpha boundary is not realised by any periodic domain")
    if len(val) != len(d.regions):
        raise ValueError("some region is not reachable across alpha arcs from a marked point")
    D = tuple(val[r.id] for r in d.regions)
    if not boundary_decomposition(d, D).periodic:
        raise ValueError("alpha boundary is not realised by any periodic domain")
    return D


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    witness: Domain | None = None


def check_weak_admissibility(d: Diagram, basis: list[Domain] | None = None) -> AdmissibilityVerdict:
    """Decide whether some nonzero nonnegative periodic domain avoids every marked region.

    In lattice coordinates each region contributes a row ``u``; a bad domain is
    a ``lam`` with ``U lam >= 0`` and ``U lam != 0``.  By the alternative
    theorem none exists exactly when ``U^T y = 0`` has a solution with every
    ``y >= 1``.  That small system goes to phase one of the simplex method, and
    when it is infeasible the dual certificate is itself a bad ``lam``.
    """
    basis = periodic_domain_lattice(d) if basis is None else basis
    r = len(basis)
    if r == 0:
        return AdmissibilityVerdict(True)
    m = len(d.regions)
    rows = []
    seen = set()
    for i in range(m):
        row = [basis[j][i] for j in range(r)]
        if not any(row):
            continue
        g = vgcd(row)
        key = tuple(v // g for v in row)
        if key not in seen:
            seen.add(key)
            rows.append(row)
    # y = 1 + z with z >= 0:  U^T z = -U^T 1
    A = [[row[j] for row in rows] for j in range(r)]
    b = [-sum(row[j] for row in rows) for j in range(r)]
    x, cert = phase_one(A, b)
    if x is not None:
        return AdmissibilityVerdict(True)
    lam = cert
    P = [sum(Fraction(basis[j][i]) * lam[j] for j in range(r)) for i in range(m)]
    den = lcm(*(p.denominator for p in P))
    ints = [int(p * den) for p in P]
    g = vgcd(ints)
    W = tuple(v // g for v in ints)
    if min(W) < 0 or not any(W):
        raise ArithmeticError("admissibility certificate failed its own check")
    return AdmissibilityVerdict(False, W)


def domain_norms(d: Diagram, D, boundary: bool = True) -> tuple[int, ...]:
    """(max |n_i|, max |alpha coefficient|, max |beta coefficient|)."""
    _check_len(d, D)
    top = max((abs(v) for v in D), default=0)
    if not boundary:
        return (top,)
    bd = boundary_decomposition(d, D)
    if not bd.periodic:
        raise ValueError(f"domain is not periodic (arc {bd.offending_arc})")
    return (
        top,
        max((abs(v) for v in bd.alpha), default=0),
        max((abs(v) for v in bd.beta), default=0),
    )
