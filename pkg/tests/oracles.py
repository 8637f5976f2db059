"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction


def bad_domain_search(d, top: int = 3):
    """Depth-first search for a nonzero domain with region values in 0..top,
    zero at every marked region, whose boundary is a sum of whole curves.

    Regions are filled one neighbour at a time; crossing an arc whose curve
    has no coefficient yet branches over every admissible neighbour value.
    Returns a witness tuple in region order, or None.
    """
    regions = [r.id for r in d.regions]
    marked = set(d.point_regions())
    nbrs = {r: [] for r in regions}
    for a in d.arcs:
        L, R = d.left(a.id), d.right(a.id)
        nbrs[R].append((L, a.curve, 1))
        nbrs[L].append((R, a.curve, -1))
    start = sorted(marked)[0] if marked else regions[0]

    def consistent(val, coef):
        for a in d.arcs:
            L, R = d.left(a.id), d.right(a.id)
            if L in val and R in val and a.curve in coef and val[L] - val[R] != coef[a.curve]:
                return False
        return True

    def search(val, coef):
        if not consistent(val, coef):
            return None
        if len(val) == len(regions):
            diffs = {}
            for a in d.arcs:
                x = val[d.left(a.id)] - val[d.right(a.id)]
                if diffs.setdefault(a.curve, x) != x:
                    return None
            return tuple(val[r] for r in regions) if any(val.values()) else None
        for r in regions:
            if r not in val:
                continue
            for w, c, s in nbrs[r]:
                if w in val:
                    continue
                if c in coef:
                    x = val[r] + s * coef[c]
                    if not 0 <= x <= top or (w in marked and x != 0):
                        return None
                    return search({**val, w: x}, coef)
                options = [0] if w in marked else range(top + 1)
                for x in options:
                    found = search({**val, w: x}, {**coef, c: s * (x - val[r])})
                    if found is not None:
                        return found
                return None
        return None

    return search({start: 0}, {})


def permanent(m):
    """Ryser's inclusion-exclusion formula."""
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for row in m:
            prod *= sum(row[j] for j in cols)
        total += (-1) ** len(cols) * prod
    return (-1) ** n * total


def generator_tuples(d):
    """Every choice of one vertex per alpha curve on distinct beta curves."""
    by_alpha = [[v for v in d.vertices if v.alpha == c.id] for c in d.alphas]
    out = []
    for pick in itertools.product(*by_alpha):
        if len({v.beta for v in pick}) == len(pick):
            out.append(tuple(v.id for v in pick))
    return out


def rational_nullity(rows, cols):
    """Dimension of the rational kernel by plain Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(cols):
        p = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return cols - rank


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out
