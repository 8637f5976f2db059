"""Cyclic covers of pointed diagrams, reduction back to one marked point, and
counting of intersection-point generators."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .diagram import (
    ALPHA,
    BETA,
    IN,
    OUT,
    Arc,
    Curve,
    Diagram,
    Point,
    Region,
    Vertex,
    canonical_maps,
    cut_components,
    validate,
)
from .domains import Domain, check_weak_admissibility
from .draft import Draft
from .linalg import integer_kernel, matvec, transpose
from .moves import erase
from .presentation import beta_orientations, intersection_matrix

__all__ = [
    "CoverError",
    "CoverReport",
    "Cover",
    "cohomology_basis",
    "cyclic_cover",
    "pullback",
    "pushforward",
    "reduce_to_pointed",
    "generator_matrix",
    "enumerate_generators",
]


class CoverError(ValueError):
    pass


def cohomology_basis(d: Diagram) -> list[tuple[int, ...]]:
    """Integer basis of weights ``c`` on beta curves with ``c^T A = 0``."""
    A = intersection_matrix(d)
    nb = len(d.betas)
    if nb == 0:
        return []
    At = transpose(A, nb) if A else []
    if not At or not At[0]:
        return [tuple(int(i == j) for j in range(nb)) for i in range(nb)]
    return [tuple(v) for v in integer_kernel(At, nb)]


@dataclass(frozen=True)
class CoverReport:
    sheets: int
    cover_genus: int
    lifted_curve_counts: tuple[int, ...]
    lifted_point_count: int
    base_admissible: bool
    cover_admissible: bool

    @property
    def admissibility_preserved(self) -> bool:
        return self.base_admissible == self.cover_admissible


@dataclass(frozen=True)
class Cover:
    """A cover together with the projection of its regions and vertices."""

    diagram: Diagram
    report: CoverReport
    region_lift: dict = field(compare=False)  # (base region, sheet) -> cover region
    vertex_lift: dict = field(compare=False)  # (base vertex, sheet) -> cover vertex


def _arc_shift(d: Diagram, c) -> dict[int, int]:
    """Sheet shift for crossing each arc from its left side to its right side."""
    eps = beta_orientations(d)
    w = {b.id: ci for b, ci in zip(d.betas, c)}
    return {a.id: (w[a.curve] * eps[a.curve] if a.curve in w else 0) for a in d.arcs}


def cyclic_cover(d: Diagram, c, m: int) -> Cover:
    """The ``m``-sheeted cyclic cover determined by beta weights ``c``."""
    if m < 2:
        raise CoverError("need at least two sheets")
    c = tuple(int(x) for x in c)
    if len(c) != len(d.betas):
        raise CoverError(f"class needs {len(d.betas)} weights, got {len(c)}")
    A = intersection_matrix(d)
    if A and any(matvec(transpose(A, len(d.alphas)), list(c))):
        raise CoverError("weights do not vanish on every relator")
    if not d.points:
        raise CoverError("cover needs a pointed diagram")
    shift = _arc_shift(d, c)
    root = d.point_regions()[0]
    # gauge: sheet offsets along a spanning tree of regions
    phi = {root: 0}
    queue = deque([root])
    adj: dict[int, list] = {r.id: [] for r in d.regions}
    for a in d.arcs:
        adj[d.left(a.id)].append((d.right(a.id), shift[a.id]))
        adj[d.right(a.id)].append((d.left(a.id), -shift[a.id]))
    while queue:
        r = queue.popleft()
        for w, s in adj[r]:
            if w not in phi:
                phi[w] = phi[r] + s
                queue.append(w)
    res = {a.id: (phi[d.left(a.id)] + shift[a.id] - phi[d.right(a.id)]) % m for a in d.arcs}
    h = m
    for v in res.values():
        h = gcd(h, v)
    if h != 1:
        raise CoverError(f"disconnected cover: holonomy generates only the subgroup {h}Z/{m}Z, which has index {h} in Z/{m}Z")

    def lift_arc(a, k):  # arc lift whose left side lies in sheet k
        return a * m + k % m

    def lift_region(r, k):
        return r * m + k % m

    def lift_vertex(v, k):
        return v * m + k % m

    # corner offsets: corner i of v sits between rotation germs i and i+1
    corner_off: dict[tuple, int] = {}
    for v in d.vertices:
        rot = d.rotation(v.id)
        off = 0
        for i in range(4):
            corner_off[(v.id,) + rot[i]] = off
            g = (v.id,) + rot[(i + 1) % 4]
            aid = d.germ_arc[g]
            off += res[aid] if g[2] == IN else -res[aid]
        if off % m:
            raise CoverError(f"holonomy around vertex {v.id} is nonzero")

    def corner_sheet_to_vertex(germ, k):
        """Lift of the vertex whose corner starting at ``germ`` lies in sheet k."""
        return lift_vertex(germ[0], k - corner_off[germ])

    curves, verts, arcs, regions, pts = [], [], [], [], []
    for v in d.vertices:
        for k in range(m):
            verts.append(Vertex(lift_vertex(v.id, k), v.alpha, v.beta))
    for a in d.arcs:
        fam = d.curve_map[a.curve].family
        for k in range(m):
            if a.closed:
                arcs.append(Arc(lift_arc(a.id, k), a.curve))
                continue
            out_g = (a.tail, fam, OUT)
            # left of the arc at its tail: corner after the out germ
            tail = corner_sheet_to_vertex(out_g, k)
            # left of the arc at its head: corner ending at the in germ
            rot = d.rotation(a.head)
            prev = (a.head,) + rot[rot.index((fam, IN)) - 1]
            head = corner_sheet_to_vertex(prev, k)
            arcs.append(Arc(lift_arc(a.id, k), a.curve, tail, head))
    for r in d.regions:
        for k in range(m):
            cycles = []
            for cyc in r.cycles:
                lifted = []
                for ref in cyc:
                    a = abs(ref)
                    lifted.append(lift_arc(a, k) if ref > 0 else -lift_arc(a, k - res[a]))
                cycles.append(tuple(lifted))
            regions.append(Region(lift_region(r.id, k), r.genus, tuple(cycles)))
    for p in d.points:
        for k in range(m):
            pts.append(Point(p.id * m + k, lift_region(p.region, k)))

    # split each curve into its lifts by following arcs head to tail
    by_tail = {}
    for a in arcs:
        if not a.closed:
            by_tail[(a.tail, d.curve_map[a.curve].family)] = a
    comp_of: dict[int, int] = {}
    lifts: dict[int, list[list[int]]] = {}
    for a in sorted(arcs, key=lambda a: a.id):
        if a.id in comp_of:
            continue
        chain = [a.id]
        if not a.closed:
            fam = d.curve_map[a.curve].family
            cur = by_tail[(a.head, fam)]
            while cur.id != a.id:
                chain.append(cur.id)
                cur = by_tail[(cur.head, fam)]
        lifts.setdefault(a.curve, []).append(chain)
        for x in chain:
            comp_of[x] = len(comp_of)
    new_curve: dict[int, int] = {}
    counts = []
    for fam in (ALPHA, BETA):
        idx = 0
        for cv in d.family_curves(fam):
            counts.append(len(lifts.get(cv.id, [])))
            for chain in lifts.get(cv.id, []):
                idx += 1
                cid = len(curves) + 1
                curves.append(Curve(cid, fam, idx))
                for x in chain:
                    new_curve[x] = cid
    arcs = [Arc(a.id, new_curve[a.id], a.tail, a.head) for a in arcs]
    vfix: dict[int, dict[str, int]] = {}
    for a in arcs:
        if not a.closed:
            vfix.setdefault(a.tail, {})[d.arc_family(a.id // m)] = a.curve
    verts = [Vertex(v.id, vfix[v.id][ALPHA], vfix[v.id][BETA]) for v in verts]
    genus = m * d.genus - m + 1
    raw = Diagram(genus, tuple(curves), tuple(verts), tuple(arcs), tuple(regions), tuple(pts))
    out, maps = canonical_maps(raw)
    rep = validate(out)
    if not rep.valid:
        v = rep.violations[0]
        raise CoverError(f"cover failed validation: {v.code}: {v.message}")
    report = CoverReport(
        m,
        out.genus,
        tuple(counts),
        len(out.points),
        check_weak_admissibility(d).admissible,
        check_weak_admissibility(out).admissible,
    )
    region_lift = {(r.id, k): maps["region"][lift_region(r.id, k)] for r in d.regions for k in range(m)}
    vertex_lift = {(v.id, k): maps["vertex"][lift_vertex(v.id, k)] for v in d.vertices for k in range(m)}
    return Cover(out, report, region_lift, vertex_lift)


def pullback(cover: Cover, base: Diagram, D) -> Domain:
    m = cover.report.sheets
    out = [0] * len(cover.diagram.regions)
    idx = {r.id: i for i, r in enumerate(cover.diagram.regions)}
    for i, r in enumerate(base.regions):
        for k in range(m):
            out[idx[cover.region_lift[(r.id, k)]]] = D[i]
    return tuple(out)


def pushforward(cover: Cover, base: Diagram, D) -> Domain:
    m = cover.report.sheets
    idx = {r.id: i for i, r in enumerate(cover.diagram.regions)}
    return tuple(sum(D[idx[cover.region_lift[(r.id, k)]]] for k in range(m)) for r in base.regions)


# ---------------------------------------------------------------------------
# reduction to one marked point


def _tree_curves(d: Diagram, family: str) -> list[int]:
    comps = cut_components(d, family)
    where = {r: i for i, c in enumerate(comps) for r in c.regions}
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for c in sorted(d.family_curves(family), key=lambda c: c.id):
        a = min((a for a in d.arcs if a.curve == c.id), key=lambda a: a.id)
        x, y = find(where[d.left(a.id)]), find(where[d.right(a.id)])
        if x != y:
            parent[x] = y
            chosen.append(c.id)
    if len(chosen) != len(comps) - 1:
        raise CoverError(f"{family} pieces are not connected by curves")
    return chosen


def reduce_to_pointed(d: Diagram) -> Diagram:
    """Discard a spanning tree of curves per family and all but the first marked point."""
    if len(d.points) <= 1:
        return d
    drop = _tree_curves(d, ALPHA) + _tree_curves(d, BETA)
    dr = Draft.from_diagram(d)
    for cid in drop:
        erase(dr, cid)
    keep = min(dr.points)
    dr.points = {keep: dr.points[keep]}
    out, _ = dr.to_diagram()
    rep = validate(out)
    if not rep.valid:
        v = rep.violations[0]
        raise CoverError(f"reduced diagram failed validation: {v.code}: {v.message}")
    return out


# ---------------------------------------------------------------------------
# generators


def generator_matrix(d: Diagram) -> list[list[int]]:
    """N[i][j] = number of crossings of alpha_i with beta_j."""
    ai = {c.id: c.index - 1 for c in d.alphas}
    bi = {c.id: c.index - 1 for c in d.betas}
    N = [[0] * len(d.betas) for _ in d.alphas]
    for v in d.vertices:
        N[ai[v.alpha]][bi[v.beta]] += 1
    return N


def enumerate_generators(d: Diagram, materialize: bool = False) -> tuple[int, list[tuple[int, ...]] | None]:
    """Count (and optionally list) tuples of vertices using each alpha and each
    beta curve exactly once.  Listed tuples are ordered by alpha index."""
    N = generator_matrix(d)
    n = len(N)
    if n != len(d.betas):
        raise ValueError("generator count needs as many alpha as beta curves")
    order = sorted(range(n), key=lambda i: (sum(N[i]), i))

    @lru_cache(maxsize=None)
    def count(t: int, used: int) -> int:
        if t == n:
            return 1
        i = order[t]
        total = 0
        for j in range(n):
            if N[i][j] and not used >> j & 1:
                total += N[i][j] * count(t + 1, used | 1 << j)
        return total

    total = count(0, 0)
    if not materialize:
        return total, None
    cell: dict[tuple[int, int], list[int]] = {}
    ai = {c.id: c.index - 1 for c in d.alphas}
    bi = {c.id: c.index - 1 for c in d.betas}
    for v in sorted(d.vertices, key=lambda v: v.id):
        cell.setdefault((ai[v.alpha], bi[v.beta]), []).append(v.id)
    out = []
    pick = [0] * n

    def walk(t: int, used: int):
        if t == n:
            out.append(tuple(pick))
            return
        i = order[t]
        for j in range(n):
            if N[i][j] and not used >> j & 1 and count(t + 1, used | 1 << j):
                for v in cell[(i, j)]:
                    pick[i] = v
                    walk(t + 1, used | 1 << j)

    walk(0, 0)
    out.sort()
    return total, out
