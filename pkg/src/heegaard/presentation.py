"""Group presentations, intersection matrices and homology read from a diagram."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diagram import Diagram
from .linalg import Matrix, SmithForm, smith_normal_form

__all__ = [
    "Presentation",
    "HomologySummary",
    "ShortCurve",
    "beta_orientations",
    "u_beta_presentation",
    "presentation_length",
    "intersection_matrix",
    "smith_normal_form",
    "SmithForm",
    "first_homology",
    "short_curve_report",
]


@dataclass(frozen=True)
class Presentation:
    """Generator i is the i-th beta curve; letters are (generator, exponent ±1)."""

    generator_count: int
    relators: tuple[tuple[tuple[int, int], ...], ...]

    def __str__(self) -> str:
        gens = ", ".join(f"u{i}" for i in range(1, self.generator_count + 1))
        rels = []
        for w in self.relators:
            if not w:
                rels.append("1")
                continue
            parts = []
            i = 0
            while i < len(w):
                j = i
                while j < len(w) and w[j] == w[i]:
                    j += 1
                g, e = w[i]
                n = (j - i) * e
                parts.append(f"u{g}" if n == 1 else f"u{g}^{n}")
                i = j
            rels.append(" ".join(parts))
        return f"<{gens} | {', '.join(rels)}>"


def beta_orientations(d: Diagram) -> dict[int, int]:
    """Transverse sign per beta curve id making its lowest-id crossing positive."""
    out = {}
    for c in d.betas:
        vs = sorted(v.id for v in d.vertices if v.beta == c.id)
        out[c.id] = d.signs[vs[0]] if vs else 1
    return out


def _orient(d: Diagram, alpha_signs, beta_signs):
    eps = beta_orientations(d)
    if beta_signs is not None:
        for c, e in zip(d.betas, beta_signs):
            eps[c.id] = e
    flip = {c.id: 1 for c in d.alphas}
    if alpha_signs is not None:
        for c, e in zip(d.alphas, alpha_signs):
            flip[c.id] = e
    return eps, flip


def u_beta_presentation(
    d: Diagram,
    alpha_signs: Sequence[int] | None = None,
    beta_signs: Sequence[int] | None = None,
) -> Presentation:
    """One relator per alpha curve: the signed beta crossings met along it,
    starting at its lowest-id vertex.  ``alpha_signs``/``beta_signs`` override
    the default orientations (entry -1 reverses that curve)."""
    eps, flip = _orient(d, alpha_signs, beta_signs)
    bidx = {c.id: c.index for c in d.betas}
    rels = []
    for c in d.alphas:
        vs = d.curve_vertices(c.id)
        if flip[c.id] < 0 and vs:
            vs = [vs[0]] + vs[1:][::-1]
        word = []
        for vid in vs:
            v = d.vertex_map[vid]
            word.append((bidx[v.beta], d.signs[vid] * eps[v.beta] * flip[c.id]))
        rels.append(tuple(word))
    return Presentation(len(d.betas), tuple(rels))


def presentation_length(p: Presentation) -> int:
    return sum(max(0, len(w) - 2) for w in p.relators)


def intersection_matrix(
    d: Diagram,
    alpha_signs: Sequence[int] | None = None,
    beta_signs: Sequence[int] | None = None,
) -> Matrix:
    """Entry (i, j) is the algebraic intersection of beta_i with alpha_j."""
    eps, flip = _orient(d, alpha_signs, beta_signs)
    aidx = {c.id: c.index - 1 for c in d.alphas}
    bidx = {c.id: c.index - 1 for c in d.betas}
    A = [[0] * len(d.alphas) for _ in d.betas]
    for v in d.vertices:
        A[bidx[v.beta]][aidx[v.alpha]] += d.signs[v.id] * eps[v.beta] * flip[v.alpha]
    return A


@dataclass(frozen=True)
class HomologySummary:
    invariant_factors: tuple[int, ...]
    betti_one: int

    def __str__(self) -> str:
        parts = [f"Z/{n}" for n in self.invariant_factors]
        if self.betti_one:
            parts.append("Z" if self.betti_one == 1 else f"Z^{self.betti_one}")
        return " + ".join(parts) if parts else "0"


def first_homology(d: Diagram) -> HomologySummary:
    """H_1 as the cokernel of the intersection matrix."""
    A = intersection_matrix(d)
    n = len(d.alphas)
    if not A:
        return HomologySummary((), 0)
    sf = smith_normal_form(A, n)
    factors = tuple(abs(x) for x in sf.diagonal if abs(x) > 1)
    return HomologySummary(factors, len(d.betas) - sf.rank)


@dataclass(frozen=True)
class ShortCurve:
    """A curve with at most two intersections.

    ``case`` is one of ``disjoint``, ``single-crossing``, ``double-same-curve``
    or ``double-two-curves``; ``nu`` is the algebraic count for the
    ``double-same-curve`` case.
    """

    family: str
    index: int
    intersections: int
    case: str
    partners: tuple[int, ...] = ()
    nu: int | None = None
    notes: tuple[str, ...] = field(default=())


def short_curve_report(d: Diagram) -> list[ShortCurve]:
    out = []
    eps = beta_orientations(d)
    for c in d.alphas + d.betas:
        mine = [v for v in d.vertices if c.id in (v.alpha, v.beta)]
        if len(mine) > 2:
            continue
        other = "beta" if c.family == "alpha" else "alpha"
        partner_ids = [v.beta if c.family == "alpha" else v.alpha for v in mine]
        partners = tuple(sorted(d.curve_map[p].index for p in set(partner_ids)))
        if not mine:
            out.append(ShortCurve(c.family, c.index, 0, "disjoint"))
        elif len(mine) == 1:
            p = d.curve_map[partner_ids[0]]
            k_other = sum(1 for v in d.vertices if p.id in (v.alpha, v.beta))
            note = ("destabilization candidate",) if k_other == 1 else ()
            out.append(ShortCurve(c.family, c.index, 1, "single-crossing", partners, None, note))
        elif len(set(partner_ids)) == 1:
            nu = sum(d.signs[v.id] * eps[v.beta] for v in mine)
            note = ("connected summand S1xS2",) if nu == 0 else ("connected summand RP3",)
            out.append(ShortCurve(c.family, c.index, 2, "double-same-curve", partners, nu, note))
        else:
            out.append(ShortCurve(c.family, c.index, 2, "double-two-curves", partners, None, (f"handle slide over {other}",)))
    return out
