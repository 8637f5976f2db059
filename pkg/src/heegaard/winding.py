"""Dual curves, the monotone periodic basis, and winding alpha curves until the
diagram is weakly admissible.

Winding ``alpha_i`` along a dual curve ``gamma_i`` is realised by taking
``4K`` parallel copies of ``gamma_i``, orienting them in the pattern
``-K, +2K, -K`` and smoothing every crossing of a copy with ``alpha_i``.  The
result is a simple closed curve homotopic (hence isotopic) to ``alpha_i``
that follows ``gamma_i`` around ``K`` times in each direction on either side
of its crossing with ``alpha_i``.  Each copy meets every beta arc that
``gamma_i`` crosses once, so ``alpha_i`` gains ``4K`` crossings per beta
crossing of the guide.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .diagram import ALPHA, BETA, IN, OUT, Curve, Diagram, canonical_form, intersection_stats, validate
from .domains import (
    Domain,
    boundary_decomposition,
    check_weak_admissibility,
    domain_from_alpha_boundary,
)
from .draft import GAMMA, Draft
from .linalg import Matrix, adjugate, det, matmul, rank
from .presentation import first_homology, intersection_matrix

__all__ = [
    "WindingError",
    "DualCurve",
    "dual_curves",
    "MonotoneKernel",
    "monotone_kernel",
    "MonotoneBasis",
    "relabel_alphas",
    "monotone_periodic_basis",
    "WindingReport",
    "winding_budget",
    "wind",
]


class WindingError(RuntimeError):
    def __init__(self, message: str, witness: Domain | None = None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# dual curves


@dataclass(frozen=True)
class DualCurve:
    """A closed curve meeting ``alpha_index`` once and no other alpha curve.

    ``crossings`` lists (arc id in the input diagram, family, direction) in
    order along the curve; direction +1 means it passes from the arc's left
    side to its right side.  The first crossing is the alpha one.
    """

    alpha_index: int
    crossings: tuple[tuple[int, str, int], ...]

    @property
    def beta_crossings(self) -> int:
        return sum(1 for _, fam, _ in self.crossings if fam == BETA)


@dataclass
class _Guide:
    gid: int
    alpha: int
    verts: list[int]
    arcs: list[int]
    dirs: list[int]


def _guide_path(dr: Draft, acid: int) -> list[tuple[int, int]]:
    adj: dict[int, list] = {r: [] for r in dr.rgenus}
    for aid in sorted(dr.arcs):
        if dr.fam(aid) != BETA:
            continue
        L, R = dr.side[(aid, 1)], dr.side[(aid, -1)]
        if L != R:
            adj[L].append((R, aid, 1))
            adj[R].append((L, aid, -1))
    best = None
    for e in sorted(a for a, rec in dr.arcs.items() if rec.curve == acid):
        u, v = dr.side[(e, 1)], dr.side[(e, -1)]
        parent = {v: None}
        queue = deque([v])
        while queue and u not in parent:
            r = queue.popleft()
            for w, aid, dirn in adj[r]:
                if w not in parent:
                    parent[w] = (r, aid, dirn)
                    queue.append(w)
        if u not in parent:
            continue
        path = []
        r = u
        while parent[r] is not None:
            r, aid, dirn = parent[r]
            path.append((aid, dirn))
        path.reverse()
        if best is None or len(path) < len(best) - 1:
            best = [(e, 1)] + path
    if best is None:
        raise WindingError(f"no dual path for alpha curve {acid}: beta arcs do not connect its sides")
    return best


def _insert_guide(dr: Draft, acid: int, crossings: list[tuple[int, int]]) -> _Guide:
    idx = 1 + sum(1 for f in dr.curves.values() if f[0] == GAMMA)
    gid = dr.new_curve(GAMMA, idx)
    verts, regions = [], []
    for aid, dirn in crossings:
        rec = dr.arcs[aid]
        fam = dr.fam(aid)
        L, R = dr.side[(aid, 1)], dr.side[(aid, -1)]
        p = dr.new_vertex({fam: rec.curve, GAMMA: gid})
        if rec.closed:
            rec.tail = rec.head = p
        else:
            nb = dr.new_arc(rec.curve, p, rec.head, rec.origin)
            rec.head = p
            dr.side[(nb, 1)], dr.side[(nb, -1)] = L, R
        if dirn == 1:
            dr.rot[p] = [(GAMMA, OUT), (fam, OUT), (GAMMA, IN), (fam, IN)]
        else:
            dr.rot[p] = [(GAMMA, IN), (fam, OUT), (GAMMA, OUT), (fam, IN)]
        verts.append(p)
        regions.append(R if dirn == 1 else L)
    m = len(verts)
    arcs = []
    for j in range(m):
        g = dr.new_arc(gid, verts[j], verts[(j + 1) % m])
        dr.side[(g, 1)] = dr.side[(g, -1)] = regions[j]
        arcs.append(g)
    cycles = dr.trace()
    where = {x: i for i, c in enumerate(cycles) for x in c}
    for g in arcs:
        if where[(g, 1)] != where[(g, -1)]:
            # the chord cuts a disk off its right-hand side
            D = dr.new_region(0, origin=dr.side[(g, 1)])
            for x in cycles[where[(g, -1)]]:
                dr.side[x] = D
    return _Guide(gid, acid, verts, arcs, [dn for _, dn in crossings])


def _insert_guides(dr: Draft, alphas: list[int]) -> list[_Guide]:
    return [_insert_guide(dr, acid, _guide_path(dr, acid)) for acid in alphas]


def dual_curves(d: Diagram, count: int | None = None) -> list[DualCurve]:
    """Mutually disjoint dual curves for alpha_1 .. alpha_count (default all)."""
    dr = Draft.from_diagram(d)
    alphas = [c.id for c in d.alphas][: len(d.alphas) if count is None else count]
    out = []
    for s, acid in enumerate(alphas, 1):
        path = _guide_path(dr, acid)
        labelled = tuple((dr.arcs[aid].origin, dr.fam(aid), dn) for aid, dn in path)
        _insert_guide(dr, acid, path)
        out.append(DualCurve(s, labelled))
    return out


# ---------------------------------------------------------------------------
# monotone kernel


@dataclass(frozen=True)
class MonotoneKernel:
    """Kernel block of an intersection matrix in the maximal-minor form.

    ``order`` lists original column indices: the ``b`` free columns first,
    then the columns of the chosen square block.  ``S`` has one column per
    kernel vector, written in the original column order.
    """

    order: tuple[int, ...]
    rows: tuple[int, ...]
    block: tuple[int, ...]
    det_block: int
    R: int
    S: Matrix
    b: int


def monotone_kernel(A: Matrix, g: int | None = None) -> MonotoneKernel:
    g = len(A[0]) if A and g is None else (g or 0)
    r = rank(A) if A else 0
    b = g - r
    if r == 0:
        S = [[int(i == j) for j in range(g)] for i in range(g)]
        return MonotoneKernel(tuple(range(g)), (), (), 1, 1, S, b)
    rows = next(rs for rs in combinations(range(len(A)), r) if rank([A[i] for i in rs]) == r)
    sub = [A[i] for i in rows]
    best = None
    for cs in combinations(range(g), r):
        D = det([[row[j] for j in cs] for row in sub])
        if best is None or abs(D) > abs(best[1]):
            best = (cs, D)
    cols, dq = best
    free = [j for j in range(g) if j not in cols]
    Q = [[row[j] for j in cols] for row in sub]
    P = [[row[j] for j in free] for row in sub]
    lower = [[-x for x in row] for row in matmul(adjugate(Q), P)] if free else []
    S = [[0] * b for _ in range(g)]
    for k, j in enumerate(free):
        S[j][k] = dq
    for t, j in enumerate(cols):
        for k in range(b):
            S[j][k] = lower[t][k]
    return MonotoneKernel(tuple(free + list(cols)), rows, tuple(cols), dq, abs(dq), S, b)


def relabel_alphas(d: Diagram, order) -> tuple[Diagram, dict[int, int]]:
    """Renumber alpha curves so the new i-th alpha is the old ``order[i]``-th (0-based)."""
    new_index = {d.alphas[old].id: i + 1 for i, old in enumerate(order)}
    curves = tuple(Curve(c.id, c.family, new_index.get(c.id, c.index)) for c in d.curves)
    return canonical_form(Diagram(d.genus, curves, d.vertices, d.arcs, d.regions, d.points))


@dataclass(frozen=True)
class MonotoneBasis:
    diagram: Diagram
    domains: tuple[Domain, ...]
    R: int
    relabeling: tuple[int, ...]
    kernel: MonotoneKernel
    vertex_map: dict = field(default_factory=dict, compare=False)


def monotone_periodic_basis(d: Diagram) -> MonotoneBasis:
    """Periodic domains P_1..P_b on the relabelled diagram whose alpha boundaries
    are ``±R`` on alpha_i, zero on the other first-b alphas, and at most ``R``
    everywhere."""
    A = intersection_matrix(d)
    mk = monotone_kernel(A, len(d.alphas))
    nd, vmap = relabel_alphas(d, mk.order)
    doms = []
    for k in range(mk.b):
        x = [mk.S[j][k] for j in mk.order]
        doms.append(domain_from_alpha_boundary(nd, x))
    for i, P in enumerate(doms):
        bd = boundary_decomposition(nd, P)
        if not bd.periodic or abs(bd.alpha[i]) != mk.R or any(bd.alpha[j] for j in range(mk.b) if j != i):
            raise WindingError("monotone basis check failed", P)
        if max(abs(v) for v in bd.alpha) > mk.R:
            raise WindingError("monotone basis exceeds its scale", P)
    return MonotoneBasis(nd, tuple(doms), mk.R, mk.order, mk, vmap)


# ---------------------------------------------------------------------------
# winding


def winding_budget(k: int, o_alpha: int, o_beta: int, b: int) -> int:
    """Cap on new crossings per wound alpha curve."""
    return (k + o_alpha) * (k + o_beta) * b * 2 ** (b + 1)


@dataclass(frozen=True)
class WindingReport:
    K: int
    rounds: int
    b: int
    per_curve_new: tuple[int, ...]
    total_new: int
    budget: int
    verified_admissible: bool
    relabeling: tuple[int, ...]
    guide_beta_crossings: tuple[int, ...]
    R: int
    vertex_map: dict = field(default_factory=dict, compare=False)


def _thicken(dr: Draft, guide: _Guide, n: int) -> list[tuple[list[int], list[int]]]:
    """Replace a guide by ``n`` parallel copies; return (vertices, arcs) per copy,
    copy 0 being the rightmost."""
    m = len(guide.verts)
    cv = [[0] * m for _ in range(n)]
    germ = dr.germ_arcs()
    for j, p in enumerate(guide.verts):
        fam = next(f for f in dr.vfam[p] if f != GAMMA)
        curve = dr.vfam[p][fam]
        fin, fout = germ[(p, fam, IN)], germ[(p, fam, OUT)]
        new = [dr.new_vertex({fam: curve, GAMMA: guide.gid}) for _ in range(n)]
        for c in range(n):
            cv[c][j] = new[c]
            dr.rot[new[c]] = list(dr.rot[p])
        seq = new if guide.dirs[j] == 1 else new[::-1]
        origin = dr.arcs[fin].origin
        if fin == fout:
            dr.arcs[fin].tail, dr.arcs[fin].head = seq[-1], seq[0]
        else:
            dr.arcs[fin].head = seq[0]
            dr.arcs[fout].tail = seq[-1]
            germ[(seq[0], fam, IN)] = fin
        for a, b in zip(seq, seq[1:]):
            dr.new_arc(curve, a, b, origin)
        del dr.rot[p], dr.vfam[p]
    copies = [(cv[c], []) for c in range(n)]
    for j, g in enumerate(guide.arcs):
        L, R = dr.side[(g, 1)], dr.side[(g, -1)]
        for c in range(n):
            x = dr.new_arc(guide.gid, cv[c][j], cv[c][(j + 1) % m])
            copies[c][1].append(x)
            if c == n - 1:
                dr.side[(x, 1)] = L
            if c == 0:
                dr.side[(x, -1)] = R
        dr.drop_arc(g)
    for cyc in dr.trace():
        known = {dr.side[x] for x in cyc if x in dr.side}
        if len(known) > 1:
            raise WindingError(f"thickening produced a cycle through regions {sorted(known)}")
        r = known.pop() if known else dr.new_region(0)
        for x in cyc:
            dr.side[x] = r
    return copies


def _reverse(dr: Draft, verts: list[int], arcs: list[int]) -> None:
    swap = {(GAMMA, IN): (GAMMA, OUT), (GAMMA, OUT): (GAMMA, IN)}
    for v in verts:
        dr.rot[v] = [swap.get(gm, gm) for gm in dr.rot[v]]
    for a in arcs:
        rec = dr.arcs[a]
        rec.tail, rec.head = rec.head, rec.tail
        dr.side[(a, 1)], dr.side[(a, -1)] = dr.side[(a, -1)], dr.side[(a, 1)]


def _smooth(dr: Draft, guide: _Guide, copies) -> None:
    """Resolve every crossing of the copies with the guide's alpha curve."""
    qs = {verts[0] for verts, _ in copies}
    germ = dr.germ_arcs()
    chi = dr.region_euler()
    parent = {r: r for r in dr.rgenus}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    gap_of = {}
    succ = {}
    gaps = ({(ALPHA, OUT), (GAMMA, OUT)}, {(ALPHA, IN), (GAMMA, IN)})
    for q in sorted(qs):
        rot = dr.rot[q]
        found = []
        for i in range(4):
            X, Y = rot[i], rot[(i + 1) % 4]
            if {X, Y} in gaps:
                aid = germ[(q,) + Y]
                found.append(dr.side[(aid, 1 if Y[1] == IN else -1)])
        a, b = find(found[0]), find(found[1])
        if a != b:
            parent[max(a, b)] = min(a, b)
        gap_of[q] = found[0]
        succ[germ[(q, ALPHA, IN)]] = germ[(q, GAMMA, OUT)]
        succ[germ[(q, GAMMA, IN)]] = germ[(q, ALPHA, OUT)]
    gchi: dict[int, int] = {}
    for r, c in chi.items():
        gchi[find(r)] = gchi.get(find(r), 0) + c
    for q in qs:
        gchi[find(gap_of[q])] -= 1

    involved = set(succ) | set(succ.values())
    pred = {v: k for k, v in succ.items()}
    used = set()
    chains = []
    for a in sorted(involved):
        if a in pred:
            continue
        chain = [a]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(chain)
    for ch in chains:
        used.update(ch)
    for a in sorted(involved - used):
        if a in used:  # already swept into an earlier cycle
            continue
        chain = [a]
        used.add(a)
        while succ[chain[-1]] != a:
            chain.append(succ[chain[-1]])
            used.add(chain[-1])
        chains.append(chain)

    for ch in chains:
        sides = {s: {find(dr.side[(a, s)]) for a in ch} for s in (1, -1)}
        if len(sides[1]) != 1 or len(sides[-1]) != 1:
            raise WindingError("smoothing joined arcs with inconsistent sides")
        first, last = dr.arcs[ch[0]], dr.arcs[ch[-1]]
        closed = ch[0] in pred
        tail, head = (None, None) if closed else (first.tail, last.head)
        origin = next((dr.arcs[a].origin for a in ch if dr.arcs[a].curve == guide.alpha), first.origin)
        for a in ch:
            dr.drop_arc(a)
        na = dr.new_arc(guide.alpha, tail, head, origin)
        dr.side[(na, 1)], dr.side[(na, -1)] = sides[1].pop(), sides[-1].pop()
    for q in qs:
        del dr.rot[q], dr.vfam[q]
    for _, arcs in copies:
        for a in arcs:
            if a in dr.arcs:
                dr.arcs[a].curve = guide.alpha
    rename = {(GAMMA, IN): (ALPHA, IN), (GAMMA, OUT): (ALPHA, OUT)}
    for verts, _ in copies:
        for v in verts[1:]:
            dr.rot[v] = [rename.get(gm, gm) for gm in dr.rot[v]]
            del dr.vfam[v][GAMMA]
            dr.vfam[v][ALPHA] = guide.alpha
    for key, r in dr.side.items():
        dr.side[key] = find(r)
    for p, r in dr.points.items():
        dr.points[p] = find(r)
    dr.rgenus = {r: 0 for r in gchi}
    del dr.curves[guide.gid]
    dr.set_genus_from_euler(gchi)


def wind(d: Diagram, rounds: int | None = None) -> tuple[Diagram, WindingReport]:
    """Isotope alpha curves until the pointed diagram is weakly admissible.

    ``rounds`` overrides the number of turns ``K`` in each direction; it may
    only be raised above the default.
    """
    if len(d.points) != 1:
        raise WindingError("winding needs a diagram with exactly one marked point")
    rep = validate(d)
    if not rep.valid:
        v = rep.violations[0]
        raise WindingError(f"invalid input diagram: {v.code}: {v.message}")
    st = intersection_stats(d)
    b = first_homology(d).betti_one
    K = (st.k + st.o_alpha) * b
    if rounds is not None:
        if rounds < K:
            raise WindingError(f"rounds must be at least {K}")
        K = rounds
    budget = winding_budget(st.k, st.o_alpha, st.o_beta, b)
    g = len(d.alphas)
    if b == 0:
        verdict = check_weak_admissibility(d)
        return d, WindingReport(
            K, K, 0, (0,) * g, 0, budget, verdict.admissible, tuple(range(g)), (), 1,
            {v.id: v.id for v in d.vertices},
        )
    mb = monotone_periodic_basis(d)
    nd = mb.diagram
    before = intersection_stats(nd).k_per_alpha
    dr = Draft.from_diagram(nd)
    alphas = [c.id for c in nd.alphas][:b]
    guides = _insert_guides(dr, alphas)
    crossings = []
    for guide in guides:
        crossings.append(sum(1 for v in guide.verts if BETA in dr.vfam[v]))
    n = 4 * K
    for guide in guides:
        copies = _thicken(dr, guide, n)
        for c, (verts, arcs) in enumerate(copies):
            if c < K or c >= 3 * K:
                _reverse(dr, verts, arcs)
        _smooth(dr, guide, copies)
    out, vmap2 = dr.to_diagram()
    after = intersection_stats(out).k_per_alpha
    per = tuple(a - b_ for a, b_ in zip(after, before))
    vmap = {old: vmap2[mid] for old, mid in mb.vertex_map.items()}
    check = validate(out)
    if not check.valid:
        v = check.violations[0]
        raise WindingError(f"wound diagram failed validation: {v.code}: {v.message}")
    verdict = check_weak_admissibility(out)
    if not verdict.admissible:
        raise WindingError("wound diagram is not weakly admissible", verdict.witness)
    report = WindingReport(
        K, K, b, per, sum(per), budget, True, mb.relabeling, tuple(crossings), mb.R, vmap,
    )
    return out, report
