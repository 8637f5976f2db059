"""
Combinatorial Heegaard diagrams on closed oriented surfaces.

A diagram is stored as a graph embedded in the surface.  Curves are cut into
arcs at their transverse intersection points (vertices), and the complement of
all curves is a list of regions.  A region records its genus and its boundary
cycles, each a cyclic list of signed arc references read with the region on
the left.  A curve without intersections is a single closed arc.

Every arc is stored aligned with the orientation of its curve: it leaves its
tail vertex through the ``out`` germ of that curve and enters its head vertex
through the ``in`` germ.  The four germs at a vertex are cyclically ordered by
the region data; the crossing sign is +1 exactly when the beta ``out`` germ
follows the alpha ``out`` germ counterclockwise.
"""
from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property

ALPHA = "alpha"
BETA = "beta"
FAMILIES = (ALPHA, BETA)
IN = "in"
OUT = "out"
GERM_ORDER = ((ALPHA, OUT), (BETA, OUT), (ALPHA, IN), (BETA, IN))
HEADER = "heegaard-diagram v1"


class DiagramError(ValueError):
    """Raised for unparseable or invalid diagram input.

    ``code`` is a short stable identifier such as ``"syntax"`` or ``"euler"``.
    """

    def __init__(self, code: str, message: str, line: int | None = None, column: int | None = None):
        self.code = code
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(f"[{code}] {message}{where}")


@dataclass(frozen=True)
class Curve:
    id: int
    family: str
    index: int


@dataclass(frozen=True)
class Vertex:
    id: int
    alpha: int
    beta: int


@dataclass(frozen=True)
class Arc:
    id: int
    curve: int
    tail: int | None = None
    head: int | None = None

    @property
    def closed(self) -> bool:
        return self.tail is None


@dataclass(frozen=True)
class Region:
    id: int
    genus: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.cycles)


@dataclass(frozen=True)
class Point:
    id: int
    region: int


@dataclass(frozen=True)
class Diagram:
    genus: int
    curves: tuple[Curve, ...]
    vertices: tuple[Vertex, ...]
    arcs: tuple[Arc, ...]
    regions: tuple[Region, ...]
    points: tuple[Point, ...] = ()

    # lookups -------------------------------------------------------------
    @cached_property
    def curve_map(self) -> dict[int, Curve]:
        return {c.id: c for c in self.curves}

    @cached_property
    def vertex_map(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def arc_map(self) -> dict[int, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def region_map(self) -> dict[int, Region]:
        return {r.id: r for r in self.regions}

    def family_curves(self, family: str) -> list[Curve]:
        return sorted((c for c in self.curves if c.family == family), key=lambda c: (c.index, c.id))

    @property
    def alphas(self) -> list[Curve]:
        return self.family_curves(ALPHA)

    @property
    def betas(self) -> list[Curve]:
        return self.family_curves(BETA)

    def arc_family(self, aid: int) -> str:
        return self.curve_map[self.arc_map[aid].curve].family

    def curve_arcs(self, cid: int) -> list[Arc]:
        """Arcs of a curve in traversal order, starting at the lowest arc id."""
        arcs = [a for a in self.arcs if a.curve == cid]
        if not arcs:
            return []
        if arcs[0].closed:
            return arcs
        fam = self.curve_map[cid].family
        by_tail = {a.tail: a for a in arcs}
        start = min(arcs, key=lambda a: a.id)
        out = [start]
        cur = start
        while True:
            nxt = by_tail[cur.head]
            if nxt.id == start.id:
                return out
            out.append(nxt)
            cur = nxt
            if len(out) > len(arcs):
                raise DiagramError("curve-cycle", f"curve {cid} ({fam}) does not close up")

    def curve_vertices(self, cid: int) -> list[int]:
        """Vertices met along a curve, in orientation order from the lowest vertex id."""
        arcs = self.curve_arcs(cid)
        if not arcs or arcs[0].closed:
            return []
        seq = [a.tail for a in arcs]
        i = seq.index(min(seq))
        return seq[i:] + seq[:i]

    @cached_property
    def side_region(self) -> dict[tuple[int, int], int]:
        """Map (arc id, side) to region id; side +1 is the left of the arc."""
        out = {}
        for r in self.regions:
            for cyc in r.cycles:
                for ref in cyc:
                    out[(abs(ref), 1 if ref > 0 else -1)] = r.id
        return out

    def left(self, aid: int) -> int:
        return self.side_region[(aid, 1)]

    def right(self, aid: int) -> int:
        return self.side_region[(aid, -1)]

    @cached_property
    def germ_arc(self) -> dict[tuple[int, str, str], int]:
        out = {}
        for a in self.arcs:
            if a.closed:
                continue
            fam = self.curve_map[a.curve].family
            out[(a.tail, fam, OUT)] = a.id
            out[(a.head, fam, IN)] = a.id
        return out

    @cached_property
    def ccw_next(self) -> dict[tuple[int, str, str], tuple[int, str, str]]:
        """Counterclockwise successor of each germ, read off the region corners."""
        nxt, _ = _corner_map(self)
        return nxt

    def rotation(self, vid: int) -> list[tuple[str, str]]:
        """Counterclockwise germ order at a vertex, starting at the alpha out germ."""
        g = (vid, ALPHA, OUT)
        out = []
        for _ in range(4):
            out.append(g[1:])
            g = self.ccw_next[g]
        return out

    @cached_property
    def signs(self) -> dict[int, int]:
        return {v.id: (1 if self.ccw_next[(v.id, ALPHA, OUT)] == (v.id, BETA, OUT) else -1) for v in self.vertices}

    def corner_region(self, germ: tuple[int, str, str]) -> int:
        """Region of the corner between ``germ`` and its counterclockwise successor."""
        a = self.ccw_next[germ]
        aid = self.germ_arc[a]
        return self.side_region[(aid, 1 if a[2] == IN else -1)]

    @property
    def kind(self) -> str:
        return "unpointed" if not self.points else f"pointed({len(self.points)})"

    def point_regions(self) -> list[int]:
        return [p.region for p in sorted(self.points, key=lambda p: p.id)]


# ---------------------------------------------------------------------------
# germs and corners


def start_germ(d: Diagram, ref: int) -> tuple[int, str, str]:
    a = d.arc_map[abs(ref)]
    fam = d.curve_map[a.curve].family
    return (a.tail, fam, OUT) if ref > 0 else (a.head, fam, IN)


def end_germ(d: Diagram, ref: int) -> tuple[int, str, str]:
    a = d.arc_map[abs(ref)]
    fam = d.curve_map[a.curve].family
    return (a.head, fam, IN) if ref > 0 else (a.tail, fam, OUT)


def _corner_map(d: Diagram):
    """Return (ccw_next, problems).  Consecutive refs r1, r2 of a boundary cycle
    meet at a vertex: the germ r2 leaves by is followed counterclockwise by the
    germ r1 arrives on."""
    nxt: dict = {}
    problems: list[str] = []
    for r in d.regions:
        for cyc in r.cycles:
            if len(cyc) == 1 and d.arc_map[abs(cyc[0])].closed:
                continue
            for i, r1 in enumerate(cyc):
                r2 = cyc[(i + 1) % len(cyc)]
                a = end_germ(d, r1)
                dep = start_germ(d, r2)
                if a[0] != dep[0] or a[1] == dep[1]:
                    problems.append(f"region {r.id}: refs {r1} and {r2} do not meet at a crossing")
                    continue
                if dep in nxt:
                    problems.append(f"vertex {dep[0]}: germ {dep[1]}:{dep[2]} starts two corners")
                    continue
                nxt[dep] = a
    return nxt, problems


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class CutComponent:
    regions: tuple[int, ...]
    euler: int
    boundary: int
    genus: int
    points: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    genus: int | None = None
    euler: int | None = None
    alpha_components: int | None = None
    beta_components: int | None = None
    alpha_planar: bool | None = None
    beta_planar: bool | None = None
    kind: str | None = None

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def cut_components(d: Diagram, family: str) -> list[CutComponent]:
    """Components of the surface cut along every curve of ``family``."""
    other = BETA if family == ALPHA else ALPHA
    parent = {r.id: r.id for r in d.regions}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    glue = Counter()
    for a in d.arcs:
        if d.curve_map[a.curve].family != other:
            continue
        x, y = find(d.left(a.id)), find(d.right(a.id))
        if x != y:
            parent[x] = y
    for a in d.arcs:
        if d.curve_map[a.curve].family == other and not a.closed:
            glue[find(d.left(a.id))] += 1
    euler = Counter()
    for r in d.regions:
        euler[find(r.id)] += r.euler
    bound = Counter()
    for c in d.family_curves(family):
        arcs = [a for a in d.arcs if a.curve == c.id]
        first = min(arcs, key=lambda a: a.id)
        for s in (1, -1):
            bound[find(d.side_region[(first.id, s)])] += 1
    pts: dict[int, list[int]] = {}
    for p in d.points:
        pts.setdefault(find(p.region), []).append(p.id)
    roots = sorted({find(r.id) for r in d.regions})
    out = []
    for root in roots:
        chi = euler[root] - glue[root]
        b = bound[root]
        out.append(
            CutComponent(
                regions=tuple(sorted(r.id for r in d.regions if find(r.id) == root)),
                euler=chi,
                boundary=b,
                genus=(2 - b - chi) // 2,
                points=tuple(sorted(pts.get(root, []))),
            )
        )
    return out


def surface_euler(d: Diagram) -> int:
    seg = sum(1 for a in d.arcs if not a.closed)
    return len(d.vertices) - seg + sum(r.euler for r in d.regions)


def validate(d: Diagram, heegaard: bool = True) -> ValidationReport:
    """Check every diagram invariant and report all violations found.

    With ``heegaard=False`` only the embedded-graph invariants are checked,
    which allows partial diagrams such as the result of erasing a curve.
    """
    bad: list[Violation] = []

    def add(code, msg):
        bad.append(Violation(code, msg))

    for name, items in (("curve", d.curves), ("vertex", d.vertices), ("arc", d.arcs), ("region", d.regions), ("point", d.points)):
        dup = [k for k, n in Counter(x.id for x in items).items() if n > 1]
        for k in dup:
            add("duplicate-id", f"{name} id {k} used more than once")
    curves = {c.id: c for c in d.curves}
    for c in d.curves:
        if c.family not in FAMILIES:
            add("syntax", f"curve {c.id} has unknown family {c.family!r}")
    for fam in FAMILIES:
        idx = [c.index for c in d.curves if c.family == fam]
        if len(set(idx)) != len(idx):
            add("duplicate-id", f"two {fam} curves share an index")
    vids = {v.id for v in d.vertices}
    for v in d.vertices:
        if curves.get(v.alpha) is None or curves.get(v.beta) is None:
            add("dangling-reference", f"vertex {v.id} names a missing curve")
        elif curves[v.alpha].family != ALPHA or curves[v.beta].family != BETA:
            add("germ", f"vertex {v.id} curves are not one alpha and one beta")
    for a in d.arcs:
        if a.curve not in curves:
            add("dangling-reference", f"arc {a.id} names missing curve {a.curve}")
        for end in (a.tail, a.head):
            if end is not None and end not in vids:
                add("dangling-reference", f"arc {a.id} names missing vertex {end}")
        if (a.tail is None) != (a.head is None):
            add("germ", f"arc {a.id} has one endpoint")
    aids = {a.id for a in d.arcs}
    for r in d.regions:
        if r.genus < 0:
            add("syntax", f"region {r.id} has negative genus")
        for cyc in r.cycles:
            if not cyc:
                add("syntax", f"region {r.id} has an empty boundary cycle")
            for ref in cyc:
                if abs(ref) not in aids or ref == 0:
                    add("dangling-reference", f"region {r.id} names missing arc {ref}")
    rids = {r.id for r in d.regions}
    for p in d.points:
        if p.region not in rids:
            add("dangling-reference", f"point {p.id} names missing region {p.region}")
    if d.genus < 0:
        add("syntax", "negative genus")
    if bad:
        return ValidationReport(tuple(bad))

    # each arc is used once with each sign
    plus, minus = Counter(), Counter()
    for r in d.regions:
        for cyc in r.cycles:
            for ref in cyc:
                (plus if ref > 0 else minus)[abs(ref)] += 1
    for a in d.arcs:
        p, m = plus[a.id], minus[a.id]
        if p + m != 2:
            add("arc-usage", f"arc {a.id} is used {p + m} times in boundary cycles")
        elif p != 1:
            add("sign-parity", f"arc {a.id} appears twice with the same sign")
    # closed arcs
    for a in d.arcs:
        if a.closed:
            others = [b for b in d.arcs if b.curve == a.curve and b.id != a.id]
            if others or any(v.alpha == a.curve or v.beta == a.curve for v in d.vertices):
                add("closed-arc", f"closed arc {a.id} shares its curve with other arcs or vertices")
    for r in d.regions:
        for cyc in r.cycles:
            if len(cyc) > 1 and any(d.arc_map[abs(x)].closed for x in cyc):
                add("closed-arc", f"region {r.id} mixes a closed arc with other arcs in one cycle")
    # germs
    used = Counter()
    for a in d.arcs:
        if a.closed:
            continue
        fam = curves[a.curve].family
        for vid, io in ((a.tail, OUT), (a.head, IN)):
            used[(vid, fam, io)] += 1
            v = d.vertex_map[vid]
            if (v.alpha if fam == ALPHA else v.beta) != a.curve:
                add("germ", f"arc {a.id} meets vertex {vid} but its curve does not pass there")
    for v in d.vertices:
        for fam, io in GERM_ORDER:
            n = used[(v.id, fam, io)]
            if n != 1:
                add("germ", f"vertex {v.id} germ {fam}:{io} used {n} times")
    for c in d.curves:
        arcs = [a for a in d.arcs if a.curve == c.id]
        if not arcs:
            add("curve-cycle", f"curve {c.id} has no arcs")
    if bad:
        return ValidationReport(tuple(bad))
    for c in d.curves:
        arcs = [a for a in d.arcs if a.curve == c.id]
        if arcs[0].closed:
            continue
        by_tail = {a.tail: a for a in arcs}
        seen, cur = 0, arcs[0]
        while True:
            seen += 1
            cur = by_tail.get(cur.head)
            if cur is None or cur.id == arcs[0].id or seen > len(arcs):
                break
        if seen != len(arcs):
            add("curve-cycle", f"arcs of curve {c.id} do not form a single cycle")
    if bad:
        return ValidationReport(tuple(bad))

    # vertex links
    nxt, problems = _corner_map(d)
    for msg in problems:
        add("rotation", msg)
    if not problems:
        for v in d.vertices:
            g0 = (v.id, ALPHA, OUT)
            seq, g = [], g0
            for _ in range(4):
                seq.append(g)
                g = nxt.get(g)
                if g is None:
                    break
            if g != g0 or len({x[1:] for x in seq}) != 4 or any(seq[i][1] == seq[(i + 1) % 4][1] for i in range(4)):
                add("rotation", f"vertex {v.id} link is not an alternating 4-cycle")
    if bad:
        return ValidationReport(tuple(bad))

    # connectivity of the surface
    adj: dict[int, set[int]] = {r.id: set() for r in d.regions}
    for a in d.arcs:
        x, y = d.left(a.id), d.right(a.id)
        adj[x].add(y)
        adj[y].add(x)
    if d.regions:
        start = d.regions[0].id
        seen = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for y in adj[x] - seen:
                seen.add(y)
                todo.append(y)
        if len(seen) != len(d.regions):
            add("disconnected", "the surface is not connected")
    else:
        add("disconnected", "no regions")
    if bad:
        return ValidationReport(tuple(bad))

    chi = surface_euler(d)
    genus = (2 - chi) // 2 if chi % 2 == 0 and chi <= 2 else None
    if genus is None or genus != d.genus:
        add("euler", f"Euler characteristic {chi} does not match genus {d.genus}")
    acomp = cut_components(d, ALPHA)
    bcomp = cut_components(d, BETA)
    aplanar = all(c.genus == 0 for c in acomp)
    bplanar = all(c.genus == 0 for c in bcomp)
    l = len(d.points)
    kind = d.kind
    if heegaard and genus is not None:
        want = d.genus + max(l, 1) - 1
        for fam in FAMILIES:
            n = sum(1 for c in d.curves if c.family == fam)
            if n != want:
                add("family-count", f"{n} {fam} curves, expected {want}")
        for fam, comps in ((ALPHA, acomp), (BETA, bcomp)):
            if len(comps) != max(l, 1):
                add("cut-planarity", f"cutting along {fam} gives {len(comps)} components, expected {max(l, 1)}")
            for comp in comps:
                if comp.genus != 0:
                    add("cut-planarity", f"cutting along {fam} leaves a component of genus {comp.genus}")
                if l and len(comp.points) != 1:
                    add("point-placement", f"a component of the {fam} cut holds {len(comp.points)} marked points")
    return ValidationReport(
        tuple(bad),
        genus=genus,
        euler=chi,
        alpha_components=len(acomp),
        beta_components=len(bcomp),
        alpha_planar=aplanar,
        beta_planar=bplanar,
        kind=kind,
    )


def check(d: Diagram, heegaard: bool = True) -> Diagram:
    rep = validate(d, heegaard=heegaard)
    if not rep.valid:
        v = rep.violations[0]
        raise DiagramError(v.code, v.message)
    return d


# ---------------------------------------------------------------------------
# intersection statistics


@dataclass(frozen=True)
class IntersectionStats:
    k_per_alpha: tuple[int, ...]
    k_per_beta: tuple[int, ...]
    genus: int
    k: int = field(init=False)
    k_min: int = field(init=False)
    o_alpha: int = field(init=False)
    o_beta: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "k", sum(self.k_per_alpha))
        object.__setattr__(self, "k_min", min(self.k_per_alpha) if self.k_per_alpha else 0)
        object.__setattr__(self, "o_alpha", sum(1 for x in self.k_per_alpha if x == 0))
        object.__setattr__(self, "o_beta", sum(1 for x in self.k_per_beta if x == 0))


def intersection_stats(d: Diagram) -> IntersectionStats:
    ka = Counter(v.alpha for v in d.vertices)
    kb = Counter(v.beta for v in d.vertices)
    return IntersectionStats(
        tuple(ka[c.id] for c in d.alphas),
        tuple(kb[c.id] for c in d.betas),
        d.genus,
    )


# ---------------------------------------------------------------------------
# canonical numbering


def _min_rotation(cyc: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(cyc[i:] + cyc[:i]) for i in range(len(cyc)))


def canonical_form(d: Diagram) -> tuple[Diagram, dict[int, int]]:
    """Renumber every cell deterministically; also return the vertex id map."""
    out, maps = canonical_maps(d)
    return out, maps["vertex"]


def canonical_maps(d: Diagram) -> tuple[Diagram, dict[str, dict[int, int]]]:
    """Canonical renumbering with old-to-new id maps for every kind of cell."""
    cmap: dict[int, int] = {}
    curves = []
    for fam in FAMILIES:
        for i, c in enumerate(d.family_curves(fam), 1):
            cmap[c.id] = len(cmap) + 1
            curves.append(Curve(cmap[c.id], fam, i))
    vmap: dict[int, int] = {}
    amap: dict[int, int] = {}
    germ_arc = d.germ_arc
    for start in sorted(v.id for v in d.vertices):
        if start in vmap:
            continue
        vmap[start] = len(vmap) + 1
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for fam, io in GERM_ORDER:
                aid = germ_arc[(v, fam, io)]
                if aid in amap:
                    continue
                amap[aid] = len(amap) + 1
                a = d.arc_map[aid]
                other = a.head if io == OUT else a.tail
                if other not in vmap:
                    vmap[other] = len(vmap) + 1
                    queue.append(other)
    for a in sorted((a for a in d.arcs if a.closed), key=lambda a: (cmap[a.curve], a.id)):
        amap[a.id] = len(amap) + 1
    inv_a = {new: old for old, new in amap.items()}
    rmap: dict[int, int] = {}
    for new in range(1, len(amap) + 1):
        old = inv_a[new]
        for s in (1, -1):
            r = d.side_region[(old, s)]
            if r not in rmap:
                rmap[r] = len(rmap) + 1
    for r in sorted(x.id for x in d.regions):
        if r not in rmap:
            rmap[r] = len(rmap) + 1
    vertices = sorted((Vertex(vmap[v.id], cmap[v.alpha], cmap[v.beta]) for v in d.vertices), key=lambda v: v.id)
    arcs = sorted(
        (Arc(amap[a.id], cmap[a.curve], vmap.get(a.tail), vmap.get(a.head)) for a in d.arcs),
        key=lambda a: a.id,
    )
    regions = []
    for r in d.regions:
        cycles = sorted(_min_rotation(tuple((1 if x > 0 else -1) * amap[abs(x)] for x in cyc)) for cyc in r.cycles)
        regions.append(Region(rmap[r.id], r.genus, tuple(cycles)))
    regions.sort(key=lambda r: r.id)
    pts = sorted(d.points, key=lambda p: (rmap[p.region], p.id))
    points = tuple(Point(i, rmap[p.region]) for i, p in enumerate(pts, 1))
    pmap = {p.id: i for i, p in enumerate(pts, 1)}
    maps = {"curve": cmap, "vertex": vmap, "arc": amap, "region": rmap, "point": pmap}
    return Diagram(d.genus, tuple(curves), tuple(vertices), tuple(arcs), tuple(regions), points), maps


def canonicalize(d: Diagram) -> Diagram:
    return canonical_form(d)[0]


# ---------------------------------------------------------------------------
# text format


def serialize(d: Diagram) -> str:
    lines = [HEADER, f"genus {d.genus}"]
    for c in sorted(d.curves, key=lambda c: c.id):
        lines.append(f"curve {c.id} family={c.family} index={c.index}")
    for v in d.vertices:
        lines.append(f"vertex {v.id} alpha={v.alpha} beta={v.beta}")
    for a in d.arcs:
        if a.closed:
            lines.append(f"arc {a.id} curve={a.curve} closed")
        else:
            lines.append(f"arc {a.id} curve={a.curve} from={a.tail}:out to={a.head}:in")
    for r in d.regions:
        cyc = " ".join("( " + " ".join(f"{x:+d}" for x in c) + " )" for c in r.cycles)
        lines.append(f"region {r.id} genus={r.genus} boundary={cyc}".rstrip())
    for p in d.points:
        lines.append(f"point {p.id} region={p.region}")
    return "\n".join(lines) + "\n"


_INT = re.compile(r"[+\-−]?\d+")
_BOUNDARY_TOKEN = re.compile(r"\s*(\(|\)|[+\-−]?\d+)")


def _int(tok: str) -> int:
    return int(tok.replace("−", "-"))


def _parse_raw(text: str) -> Diagram:
    genus = None
    curves, vertices, arcs, regions, points = [], [], [], [], []
    flipped: set[int] = set()
    lines = text.splitlines()
    first = None
    for no, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if first is None:
            first = no
            if body.strip() != HEADER:
                raise DiagramError("syntax", f"expected header {HEADER!r}", no, 1)
            continue
        stripped = body.lstrip()
        col0 = len(body) - len(stripped) + 1
        words = stripped.split()
        kw = words[0]

        def col_of(tok: str) -> int:
            i = body.find(tok)
            return i + 1 if i >= 0 else col0

        def kv(expect: list[str], rest: list[str]) -> dict[str, str]:
            out = {}
            for tok in rest:
                if "=" not in tok:
                    raise DiagramError("syntax", f"expected key=value, got {tok!r}", no, col_of(tok))
                k, v = tok.split("=", 1)
                if k not in expect or k in out:
                    raise DiagramError("syntax", f"unexpected field {k!r}", no, col_of(tok))
                out[k] = v
            missing = [k for k in expect if k not in out]
            if missing:
                raise DiagramError("syntax", f"missing field {missing[0]!r}", no, col0)
            return out

        def num(tok: str, what: str) -> int:
            if not re.fullmatch(r"\d+", tok):
                raise DiagramError("syntax", f"bad {what} {tok!r}", no, col_of(tok))
            return int(tok)

        if kw == "genus":
            if len(words) != 2:
                raise DiagramError("syntax", "genus takes one value", no, col0)
            genus = num(words[1], "genus")
        elif kw == "curve":
            if len(words) < 2:
                raise DiagramError("syntax", "curve needs an id", no, col0)
            f = kv(["family", "index"], words[2:])
            if f["family"] not in FAMILIES:
                raise DiagramError("syntax", f"unknown family {f['family']!r}", no, col_of(f["family"]))
            curves.append(Curve(num(words[1], "curve id"), f["family"], num(f["index"], "index")))
        elif kw == "vertex":
            if len(words) < 2:
                raise DiagramError("syntax", "vertex needs an id", no, col0)
            f = kv(["alpha", "beta"], words[2:])
            vertices.append(Vertex(num(words[1], "vertex id"), num(f["alpha"], "curve id"), num(f["beta"], "curve id")))
        elif kw == "arc":
            if len(words) < 3:
                raise DiagramError("syntax", "arc needs an id and a curve", no, col0)
            aid = num(words[1], "arc id")
            if words[-1] == "closed":
                f = kv(["curve"], words[2:-1])
                arcs.append(Arc(aid, num(f["curve"], "curve id")))
                continue
            f = kv(["curve", "from", "to"], words[2:])
            ends = []
            for key in ("from", "to"):
                m = re.fullmatch(r"(\d+):(in|out)", f[key])
                if not m:
                    raise DiagramError("syntax", f"bad endpoint {f[key]!r}", no, col_of(f[key]))
                ends.append((int(m.group(1)), m.group(2)))
            (v1, g1), (v2, g2) = ends
            if g1 == g2:
                raise DiagramError("germ", f"arc {aid} joins two {g1} germs", no, col_of(f["to"]))
            if g1 == OUT:
                arcs.append(Arc(aid, num(f["curve"], "curve id"), v1, v2))
            else:
                arcs.append(Arc(aid, num(f["curve"], "curve id"), v2, v1))
                flipped.add(aid)
        elif kw == "region":
            m = re.match(r"\s*region\s+(\S+)\s+genus=(\S+)\s+boundary=(.*)$", body)
            if not m:
                raise DiagramError("syntax", "expected 'region <id> genus=<h> boundary=...'", no, col0)
            rid = num(m.group(1), "region id")
            h = num(m.group(2), "genus")
            rest = m.group(3)
            offset = m.start(3)
            cycles, cur, pos = [], None, 0
            while pos < len(rest):
                if not rest[pos:].strip():
                    break
                t = _BOUNDARY_TOKEN.match(rest, pos)
                if not t:
                    raise DiagramError("syntax", "bad boundary token", no, offset + pos + 1)
                tok = t.group(1)
                tcol = offset + t.start(1) + 1
                if tok == "(":
                    if cur is not None:
                        raise DiagramError("syntax", "nested '('", no, tcol)
                    cur = []
                elif tok == ")":
                    if cur is None:
                        raise DiagramError("syntax", "unmatched ')'", no, tcol)
                    cycles.append(tuple(cur))
                    cur = None
                else:
                    if cur is None:
                        raise DiagramError("syntax", "arc reference outside a cycle", no, tcol)
                    cur.append(_int(tok))
                pos = t.end()
            if cur is not None:
                raise DiagramError("syntax", "unclosed '('", no, offset + len(rest) + 1)
            regions.append(Region(rid, h, tuple(cycles)))
        elif kw == "point":
            if len(words) < 2:
                raise DiagramError("syntax", "point needs an id", no, col0)
            f = kv(["region"], words[2:])
            points.append(Point(num(words[1], "point id"), num(f["region"], "region id")))
        else:
            raise DiagramError("syntax", f"unknown keyword {kw!r}", no, col0)
    if first is None:
        raise DiagramError("syntax", "empty input", 1, 1)
    if genus is None:
        raise DiagramError("syntax", "missing genus line", len(lines) or 1, 1)
    if flipped:
        regions = [
            Region(r.id, r.genus, tuple(tuple(-x if abs(x) in flipped else x for x in c) for c in r.cycles))
            for r in regions
        ]
    return Diagram(genus, tuple(curves), tuple(vertices), tuple(arcs), tuple(regions), tuple(points))


def parse_diagram(text: str, strict: bool = True) -> Diagram:
    """Parse diagram text.  With ``strict`` the result must validate cleanly,
    otherwise a :class:`DiagramError` carrying the first violation is raised."""
    d = _parse_raw(text)
    if strict:
        check(d)
    return d


def read_diagram(path, strict: bool = True) -> Diagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read(), strict=strict)


def write_diagram(d: Diagram, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(d))
