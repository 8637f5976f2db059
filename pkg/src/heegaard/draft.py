"""Mutable working copy of a diagram used while cutting and regluing cells.

Moves edit arcs, vertex rotations and the side-to-region assignment directly,
then retrace boundary cycles from the rotations and freeze the result back
into a canonical :class:`~heegaard.diagram.Diagram`.  A third curve family,
``gamma``, is allowed here for auxiliary guide curves.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import ALPHA, BETA, IN, OUT, Arc, Curve, Diagram, DiagramError, Point, Region, Vertex, canonical_form

GAMMA = "gamma"


@dataclass
class ArcRec:
    curve: int
    tail: int | None = None
    head: int | None = None
    origin: int | None = None

    @property
    def closed(self) -> bool:
        return self.tail is None


class Draft:
    def __init__(self):
        self.curves: dict[int, list] = {}
        self.vfam: dict[int, dict[str, int]] = {}
        self.arcs: dict[int, ArcRec] = {}
        self.rot: dict[int, list[tuple[str, str]]] = {}
        self.side: dict[tuple[int, int], int] = {}
        self.rgenus: dict[int, int] = {}
        self.rorigin: dict[int, int] = {}
        self.points: dict[int, int] = {}
        self._ids = {"c": 0, "v": 0, "a": 0, "r": 0}

    # construction ---------------------------------------------------------
    @classmethod
    def from_diagram(cls, d: Diagram) -> "Draft":
        dr = cls()
        for c in d.curves:
            dr.curves[c.id] = [c.family, c.index]
        for v in d.vertices:
            dr.vfam[v.id] = {ALPHA: v.alpha, BETA: v.beta}
            dr.rot[v.id] = d.rotation(v.id)
        for a in d.arcs:
            dr.arcs[a.id] = ArcRec(a.curve, a.tail, a.head, a.id)
        for r in d.regions:
            dr.rgenus[r.id] = r.genus
            dr.rorigin[r.id] = r.id
        dr.side = dict(d.side_region)
        for p in d.points:
            dr.points[p.id] = p.region
        dr._ids = {
            "c": max([0, *dr.curves]),
            "v": max([0, *dr.vfam]),
            "a": max([0, *dr.arcs]),
            "r": max([0, *dr.rgenus]),
        }
        return dr

    def _fresh(self, kind: str) -> int:
        self._ids[kind] += 1
        return self._ids[kind]

    def new_curve(self, family: str, index: int) -> int:
        cid = self._fresh("c")
        self.curves[cid] = [family, index]
        return cid

    def new_vertex(self, fams: dict[str, int]) -> int:
        vid = self._fresh("v")
        self.vfam[vid] = dict(fams)
        return vid

    def new_arc(self, curve: int, tail: int | None, head: int | None, origin: int | None = None) -> int:
        aid = self._fresh("a")
        self.arcs[aid] = ArcRec(curve, tail, head, origin)
        return aid

    def new_region(self, genus: int = 0, origin: int | None = None) -> int:
        rid = self._fresh("r")
        self.rgenus[rid] = genus
        self.rorigin[rid] = origin if origin is not None else rid
        return rid

    def drop_arc(self, aid: int) -> None:
        del self.arcs[aid]
        self.side.pop((aid, 1), None)
        self.side.pop((aid, -1), None)

    # queries --------------------------------------------------------------
    def fam(self, aid: int) -> str:
        return self.curves[self.arcs[aid].curve][0]

    def germ_arcs(self) -> dict[tuple[int, str, str], int]:
        out = {}
        for aid, a in self.arcs.items():
            if a.closed:
                continue
            fam = self.curves[a.curve][0]
            out[(a.tail, fam, OUT)] = aid
            out[(a.head, fam, IN)] = aid
        return out

    def trace(self) -> list[list[tuple[int, int]]]:
        """Boundary cycles as lists of arc sides, each read with its region on the left."""
        germ = self.germ_arcs()
        prev = {}
        for v, seq in self.rot.items():
            for i, g in enumerate(seq):
                prev[(v,) + g] = (v,) + seq[i - 1]
        seen: set = set()
        cycles = []
        for aid in sorted(self.arcs):
            for s in (1, -1):
                if (aid, s) in seen:
                    continue
                cyc = []
                cur = (aid, s)
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur)
                    a = self.arcs[cur[0]]
                    if a.closed:
                        break
                    fam = self.curves[a.curve][0]
                    arrive = (a.head, fam, IN) if cur[1] == 1 else (a.tail, fam, OUT)
                    dep = prev[arrive]
                    cur = (germ[dep], 1 if dep[2] == OUT else -1)
                if cur != cyc[0]:
                    raise DiagramError("rotation", f"boundary walk from arc {aid} does not close up")
                cycles.append(cyc)
        return cycles

    def cycles_by_region(self, cycles=None) -> dict[int, list[list[tuple[int, int]]]]:
        cycles = self.trace() if cycles is None else cycles
        out: dict[int, list] = {r: [] for r in self.rgenus}
        for cyc in cycles:
            regs = {self.side[x] for x in cyc}
            if len(regs) != 1:
                raise DiagramError("rotation", f"a boundary cycle runs through regions {sorted(regs)}")
            out[regs.pop()].append(cyc)
        return out

    def region_euler(self, cycles=None) -> dict[int, int]:
        by = self.cycles_by_region(cycles)
        return {r: 2 - 2 * self.rgenus[r] - len(cs) for r, cs in by.items()}

    def set_genus_from_euler(self, chi: dict[int, int]) -> None:
        by = self.cycles_by_region()
        for r, cs in by.items():
            twice = 2 - len(cs) - chi[r]
            if twice < 0 or twice % 2:
                raise DiagramError("euler", f"region {r} gets an impossible Euler characteristic {chi[r]}")
            self.rgenus[r] = twice // 2

    def reindex(self, family: str) -> None:
        cs = sorted((c for c in self.curves if self.curves[c][0] == family), key=lambda c: (self.curves[c][1], c))
        for i, c in enumerate(cs, 1):
            self.curves[c][1] = i

    def drop_curve(self, cid: int) -> None:
        fam = self.curves.pop(cid)[0]
        self.reindex(fam)

    # output ---------------------------------------------------------------
    def to_diagram(self) -> tuple[Diagram, dict[int, int]]:
        """Freeze into a canonical diagram; also return the vertex id map."""
        if any(f[0] not in (ALPHA, BETA) for f in self.curves.values()):
            raise DiagramError("germ", "auxiliary curves are still present")
        by = self.cycles_by_region()
        regions = []
        for rid, cs in by.items():
            refs = tuple(tuple(aid * s for aid, s in cyc) for cyc in cs)
            regions.append(Region(rid, self.rgenus[rid], refs))
        seg = sum(1 for a in self.arcs.values() if not a.closed)
        chi = len(self.rot) - seg + sum(r.euler for r in regions)
        if chi % 2 or chi > 2:
            raise DiagramError("euler", f"surface Euler characteristic {chi}")
        d = Diagram(
            (2 - chi) // 2,
            tuple(Curve(c, f, i) for c, (f, i) in self.curves.items()),
            tuple(Vertex(v, f[ALPHA], f[BETA]) for v, f in self.vfam.items()),
            tuple(Arc(aid, a.curve, a.tail, a.head) for aid, a in self.arcs.items()),
            tuple(regions),
            tuple(Point(p, r) for p, r in self.points.items()),
        )
        return canonical_form(d)
