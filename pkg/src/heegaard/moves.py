"""Elementary moves on diagrams and the standard/random diagram generators."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import (
    ALPHA,
    BETA,
    IN,
    OUT,
    Arc,
    Curve,
    Diagram,
    DiagramError,
    Point,
    Region,
    Vertex,
    canonicalize,
    validate,
)
from .draft import Draft


class MoveError(ValueError):
    """A move precondition failed."""


@dataclass(frozen=True)
class FingerMove:
    """Push ``curve`` from side ``side`` of its arc ``launch`` across arc ``target``.

    ``target_side`` picks which side of the target is approached when both
    sides border the launch region; by default the first one met walking
    around the launch region is used.
    """

    curve: int
    launch: int
    side: int
    target: int
    target_side: int | None = None


@dataclass(frozen=True)
class EraseCurve:
    curve: int


@dataclass(frozen=True)
class SurgeFreeCurve:
    curve: int


@dataclass(frozen=True)
class Destabilize:
    alpha: int
    beta: int


Move = FingerMove | EraseCurve | SurgeFreeCurve | Destabilize


# ---------------------------------------------------------------------------
# finger move


def _walk_ends(a, sg):
    return (a.tail, a.head) if sg == 1 else (a.head, a.tail)


def finger(dr: Draft, m: FingerMove) -> tuple[int, int]:
    """Apply a finger move to a draft in place; return the new vertices (x, y).

    The finger leaves the launch arc, runs through the shared region and
    crosses the target arc twice.  ``x`` is the crossing reached first when
    walking the target against the finger's approach direction.
    """
    L, s, T = m.launch, m.side, m.target
    if s not in (1, -1):
        raise MoveError("side must be +1 or -1")
    if L not in dr.arcs or dr.arcs[L].curve != m.curve:
        raise MoveError(f"launch arc {L} does not belong to curve {m.curve}")
    if T not in dr.arcs:
        raise MoveError(f"target arc {T} does not exist")
    famC, famT = dr.fam(L), dr.fam(T)
    if famC == famT:
        raise MoveError("target arc must belong to the opposite family")
    if m.target_side not in (None, 1, -1):
        raise MoveError("target side must be +1 or -1")
    R = dr.side[(L, s)]
    cycles = dr.trace()
    cyc = next(c for c in cycles if (L, s) in c)
    i = cyc.index((L, s))
    cyc = cyc[i:] + cyc[:i]
    W = None
    t = None
    for j, (aid, sg) in enumerate(cyc[1:], 1):
        if aid == T and m.target_side in (None, sg):
            W, t = cyc[1:j], sg
            break
    same = W is not None
    if not same:
        W = []
        for c in cycles:
            if c is cyc or dr.side[c[0]] != R or (L, s) in c:
                continue
            hit = [sg for aid, sg in c if aid == T and m.target_side in (None, sg)]
            if hit:
                t = hit[0]
                break
        if t is None:
            raise MoveError(f"arc {L} side {s} and arc {T} do not border a common region")

    Tc = dr.arcs[T].curve
    La, Ta = dr.arcs[L], dr.arcs[T]
    Wset = set(W)
    D = dr.new_region(0, origin=R) if same else None
    bigon = dr.new_region(0, origin=R)

    def post(side):
        return D if same and side in Wset else dr.side[side]

    Ro, Rp = post((L, -s)), post((T, -t))
    x = dr.new_vertex({famC: m.curve, famT: Tc})
    y = dr.new_vertex({famC: m.curve, famT: Tc})

    def mk(curve, frm, to, sg, origin):
        tail, head = (frm, to) if sg == 1 else (to, frm)
        return dr.new_arc(curve, tail, head, origin)

    Ws, We = _walk_ends(La, s)
    Ts, Te = _walk_ends(Ta, t)
    if La.closed:
        A1 = A3 = mk(m.curve, x, y, s, La.origin)
    else:
        A1 = mk(m.curve, Ws, y, s, La.origin)
        A3 = mk(m.curve, x, We, s, La.origin)
    A2 = mk(m.curve, y, x, s, La.origin)
    if Ta.closed:
        T1 = T3 = mk(Tc, y, x, t, Ta.origin)
    else:
        T1 = mk(Tc, Ts, x, t, Ta.origin)
        T3 = mk(Tc, y, Te, t, Ta.origin)
    T2 = mk(Tc, x, y, t, Ta.origin)

    def ws(fam, sg):
        return (fam, OUT if sg == 1 else IN)

    def we(fam, sg):
        return (fam, IN if sg == 1 else OUT)

    dr.rot[x] = [ws(famC, s), we(famT, t), we(famC, s), ws(famT, t)]
    dr.rot[y] = [ws(famT, t), we(famC, s), we(famT, t), ws(famC, s)]

    dr.drop_arc(L)
    dr.drop_arc(T)
    for side in W:
        if side[0] not in (L, T):
            dr.side[side] = D
    inner = D if same else R
    dr.side[(A1, s)] = R
    dr.side[(T3, t)] = R
    dr.side[(A3, s)] = inner
    dr.side[(T1, t)] = inner
    dr.side[(A3, -s)] = Ro
    dr.side[(A1, -s)] = Ro
    dr.side[(T2, t)] = Ro
    dr.side[(T3, -t)] = Rp
    dr.side[(T1, -t)] = Rp
    dr.side[(A2, s)] = Rp
    dr.side[(A2, -s)] = bigon
    dr.side[(T2, -t)] = bigon
    return x, y


# ---------------------------------------------------------------------------
# erase / surge / destabilize


def erase(dr: Draft, cid: int) -> None:
    """Delete a curve; regions on either side of it merge."""
    if cid not in dr.curves:
        raise MoveError(f"no curve {cid}")
    fam = dr.curves[cid][0]
    chi = dr.region_euler()
    mine = [aid for aid, a in dr.arcs.items() if a.curve == cid]
    parent = {r: r for r in dr.rgenus}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for aid in mine:
        a, b = find(dr.side[(aid, 1)]), find(dr.side[(aid, -1)])
        if a != b:
            parent[max(a, b)] = min(a, b)
    gchi: dict[int, int] = {}
    for r, c in chi.items():
        gchi[find(r)] = gchi.get(find(r), 0) + c
    for aid in mine:
        if not dr.arcs[aid].closed:
            gchi[find(dr.side[(aid, 1)])] -= 1

    germ = dr.germ_arcs()
    for v in sorted(v for v, f in dr.vfam.items() if f.get(fam) == cid):
        ofam = next(f for f in dr.vfam[v] if f != fam)
        ain, aout = germ[(v, ofam, IN)], germ[(v, ofam, OUT)]
        if ain == aout:
            dr.arcs[ain].tail = dr.arcs[ain].head = None
        else:
            rec = dr.arcs[aout]
            dr.arcs[ain].head = rec.head
            germ[(rec.head, ofam, IN)] = ain
            dr.drop_arc(aout)
        del dr.rot[v]
        del dr.vfam[v]
    for aid in mine:
        dr.drop_arc(aid)
    for k, r in dr.side.items():
        dr.side[k] = find(r)
    for p, r in dr.points.items():
        dr.points[p] = find(r)
    dr.rgenus = {r: 0 for r in gchi}
    dr.drop_curve(cid)
    dr.set_genus_from_euler(gchi)


def surge(dr: Draft, cid: int) -> None:
    """Cut along a free non-separating curve and cap both boundary circles."""
    if cid not in dr.curves:
        raise MoveError(f"no curve {cid}")
    mine = [aid for aid, a in dr.arcs.items() if a.curve == cid]
    if len(mine) != 1 or not dr.arcs[mine[0]].closed:
        raise MoveError(f"curve {cid} has intersections")
    aid = mine[0]
    # the curve separates iff the region adjacency graph without it is disconnected
    adj: dict[int, set] = {r: set() for r in dr.rgenus}
    for b in dr.arcs:
        if b == aid:
            continue
        u, w = dr.side[(b, 1)], dr.side[(b, -1)]
        adj[u].add(w)
        adj[w].add(u)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(adj):
        raise MoveError(f"curve {cid} separates the surface")
    # removing two boundary circles while keeping region genus caps them by disks
    dr.drop_arc(aid)
    dr.drop_curve(cid)


def destabilize(dr: Draft, acid: int, bcid: int) -> None:
    for cid, fam in ((acid, ALPHA), (bcid, BETA)):
        if cid not in dr.curves or dr.curves[cid][0] != fam:
            raise MoveError(f"curve {cid} is not an {fam} curve")
    mine = {c: [aid for aid, a in dr.arcs.items() if a.curve == c] for c in (acid, bcid)}
    va = [v for v, f in dr.vfam.items() if acid in (f.get(ALPHA), f.get(BETA)) or bcid in (f.get(ALPHA), f.get(BETA))]
    if len(va) != 1 or dr.vfam[va[0]] != {ALPHA: acid, BETA: bcid}:
        raise MoveError(f"curves {acid} and {bcid} must meet each other exactly once and nothing else")
    v = va[0]
    dr.drop_arc(mine[acid][0])
    dr.drop_arc(mine[bcid][0])
    del dr.rot[v]
    del dr.vfam[v]
    dr.drop_curve(acid)
    dr.drop_curve(bcid)


# ---------------------------------------------------------------------------
# dispatch


def apply_move_tracked(d: Diagram, m: Move) -> tuple[Diagram, dict[int, int]]:
    """Apply a move and also return the map from old to new vertex ids."""
    heegaard = validate(d).valid
    dr = Draft.from_diagram(d)
    if isinstance(m, FingerMove):
        finger(dr, m)
    elif isinstance(m, EraseCurve):
        erase(dr, m.curve)
        heegaard = False
    elif isinstance(m, SurgeFreeCurve):
        surge(dr, m.curve)
    elif isinstance(m, Destabilize):
        destabilize(dr, m.alpha, m.beta)
    else:
        raise TypeError(f"not a move: {m!r}")
    out, vmap = dr.to_diagram()
    if isinstance(m, SurgeFreeCurve):
        heegaard = heegaard or validate(out).valid
    rep = validate(out, heegaard=heegaard)
    if not rep.valid:
        v = rep.violations[0]
        raise MoveError(f"move produced an invalid diagram: {v.code}: {v.message}")
    return out, {old: vmap[old] for old in d.vertex_map if old in vmap}


def apply_move(d: Diagram, m: Move) -> Diagram:
    return apply_move_tracked(d, m)[0]


# ---------------------------------------------------------------------------
# generators


def standard_diagram(genus: int, points: int = 1, free_handles: int = 0) -> Diagram:
    """Standard diagram: ``genus - free_handles`` handles where alpha_i meets
    beta_i once, ``free_handles`` handles with disjoint parallel curves, and one
    extra nested pair of free curves per marked point beyond the first."""
    if genus < 0 or not 0 <= free_handles <= genus or points < 0:
        raise ValueError("need genus >= free_handles >= 0 and points >= 0")
    curves, verts, arcs, regions, pts = [], [], [], [], []
    big: list[tuple[int, ...]] = []
    ids = {"c": 0, "a": 0, "r": 1}

    def curve(fam, idx):
        ids["c"] += 1
        curves.append(Curve(ids["c"], fam, idx))
        return ids["c"]

    def arc(c, tail=None, head=None):
        ids["a"] += 1
        arcs.append(Arc(ids["a"], c, tail, head))
        return ids["a"]

    def region(cycles):
        ids["r"] += 1
        regions.append(Region(ids["r"], 0, tuple(cycles)))
        return ids["r"]

    idx = 0
    for i in range(genus - free_handles):
        idx += 1
        ca, cb = curve(ALPHA, idx), curve(BETA, idx)
        verts.append(Vertex(len(verts) + 1, ca, cb))
        v = verts[-1].id
        a, b = arc(ca, v, v), arc(cb, v, v)
        big.append((a, b, -a, -b))
    for i in range(free_handles):
        idx += 1
        a, b = arc(curve(ALPHA, idx)), arc(curve(BETA, idx))
        region([(a,), (-b,)])
        big += [(b,), (-a,)]
    for j in range(1, max(points, 1)):
        idx += 1
        a, b = arc(curve(ALPHA, idx)), arc(curve(BETA, idx))
        disk = region([(b,)])
        region([(a,), (-b,)])
        big.append((-a,))
        pts.append(Point(j + 1, disk))
    if points >= 1:
        pts.insert(0, Point(1, 1))
    regions.insert(0, Region(1, 0, tuple(big)))
    return canonicalize(Diagram(genus, tuple(curves), tuple(verts), tuple(arcs), tuple(regions), tuple(pts)))


def finger_candidates(d: Diagram) -> list[FingerMove]:
    """Every finger move available in ``d``, in a fixed order."""
    dr = Draft.from_diagram(d)
    by = dr.cycles_by_region()
    out = []
    for a in d.arcs:
        fam = d.curve_map[a.curve].family
        for s in (1, -1):
            R = d.side_region[(a.id, s)]
            seen = set()
            for cyc in by[R]:
                for aid, t in cyc:
                    if d.arc_family(aid) != fam and (aid, t) not in seen:
                        seen.add((aid, t))
                        out.append(FingerMove(a.curve, a.id, s, aid, t))
    return out


def random_diagram(genus: int, points: int, budget: int, seed: int, free_handles: int = 0) -> Diagram:
    """Standard diagram followed by ``budget`` random finger moves."""
    if genus < 1:
        raise ValueError("genus must be at least 1")
    rng = random.Random(seed)
    d = standard_diagram(genus, points, free_handles)
    for _ in range(budget):
        cands = finger_candidates(d)
        if not cands:
            break
        d = apply_move(d, cands[rng.randrange(len(cands))])
    return d


__all__ = [
    "MoveError",
    "FingerMove",
    "EraseCurve",
    "SurgeFreeCurve",
    "Destabilize",
    "Move",
    "apply_move",
    "apply_move_tracked",
    "standard_diagram",
    "finger_candidates",
    "random_diagram",
    "DiagramError",
]
