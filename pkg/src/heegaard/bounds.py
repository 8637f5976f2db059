"""Closed-form entropy, length and tube estimates.

Everything here is binary64 arithmetic with natural logarithms.  Constants
that are only known to exist (such as ``D(mu)``) are parameters; nothing here
makes up a value for them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .diagram import IntersectionStats
from .linalg import Matrix, charpoly, det

__all__ = [
    "REL_TOL",
    "MEYERHOFF_MU",
    "EntropyBoundReport",
    "entropy_bounds",
    "betti_term",
    "TubeShape",
    "tube_metrics",
    "ball_volume",
    "visibility_radius",
    "GeometricProfile",
    "GeometricReport",
    "length_cap",
    "volume_entropy_cap",
    "assembled_entropy_bound",
    "wrist_sum_coefficient",
    "wrist_sum_check",
    "arithmetic_constant",
    "geometric_entropy_bounds",
    "PennerReport",
    "penner_matrix",
    "penner_family",
    "entropy_transform",
]

REL_TOL = 1e-9
MEYERHOFF_MU = 0.104
LOG3 = math.log(3.0)


# ---------------------------------------------------------------------------
# entropy from intersection counts


@dataclass(frozen=True)
class EntropyBoundReport:
    """Upper bounds on the monodromy entropy of a primitive fibered class.

    A field is ``None`` when its hypotheses fail; ``flags`` records which
    hypotheses held.
    """

    k_per_alpha: tuple[int, ...]
    betti: int
    fiber_genus: int
    with_betti: float | None
    fine: float | None
    genus_two: float | None
    log3: float | None
    via_length: float | None
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def best(self) -> float | None:
        vals = [v for v in (self.with_betti, self.fine, self.genus_two, self.log3, self.via_length) if v is not None]
        return min(vals) if vals else None


def betti_term(b: int, k: int) -> float:
    """b * log(1 + b 2^(b+1) k^2)."""
    if b == 0:
        return 0.0
    return b * math.log1p(b * 2.0 ** (b + 1) * k * k)


def entropy_bounds(
    stats: IntersectionStats | Sequence[int],
    b1: int = 0,
    fiber_genus: int = 3,
    length: int | None = None,
    cover_degree: int = 1,
) -> EntropyBoundReport:
    """Evaluate the entropy bounds that apply to the given intersection counts.

    ``stats`` is either an ``IntersectionStats`` or the list ``k_1..k_g`` of
    beta crossings on each alpha curve.  ``length`` is a Heegaard presentation
    length of the base manifold; with ``cover_degree`` it yields the bound
    ``degree * (length - 1) * log 3``.
    """
    ks = tuple(stats.k_per_alpha) if isinstance(stats, IntersectionStats) else tuple(int(x) for x in stats)
    if not ks:
        raise ValueError("need at least one alpha curve")
    if min(ks) < 1:
        raise ValueError("every alpha curve must meet the beta curves (some k_i = 0)")
    if fiber_genus < 2:
        raise ValueError("fiber genus must be at least 2")
    if b1 < 0 or cover_degree < 1:
        raise ValueError("b1 must be nonnegative and the cover degree positive")
    g = len(ks)
    k = sum(ks)
    log_prod = sum(math.log(x) for x in ks)
    log_min = math.log(min(ks))
    high = fiber_genus >= 3
    all_three = min(ks) >= 3
    flags = {
        "fiber_genus_at_least_3": high,
        "fiber_genus_2": fiber_genus == 2,
        "all_k_at_least_3": all_three,
        "length_given": length is not None,
    }
    with_b = log_prod + betti_term(b1, k) - math.log(2.0) if high else None
    fine = log_prod - log_min if high else None
    two = 2.0 * (log_prod - log_min) if fiber_genus == 2 else None
    l3 = (k - 2 * g - 1) * LOG3 if high and all_three else None
    via = None
    if high and length is not None:
        via = cover_degree * (length - 1) * LOG3
    return EntropyBoundReport(ks, b1, fiber_genus, with_b, fine, two, l3, via, flags)


# ---------------------------------------------------------------------------
# tubes and balls


@dataclass(frozen=True)
class TubeShape:
    depth: float
    systole: float
    angle: float
    volume: float
    wrist: float


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= REL_TOL * max(abs(a), abs(b))


def tube_metrics(
    depth: float | None = None,
    systole: float | None = None,
    volume: float | None = None,
    wrist: float | None = None,
    angle: float = 0.0,
) -> TubeShape:
    """Complete a tube from enough of depth, systole, volume and wrist.

    Volume is ``pi l sinh(r)^2`` and wrist is ``2 pi sinh(r)``.  Depth and
    wrist carry the same information, so that pair alone is not enough.
    """
    given = {"depth": depth, "systole": systole, "volume": volume, "wrist": wrist}
    for name, v in given.items():
        if v is not None and not (v > 0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite")
    if not 0 <= angle <= math.pi:
        raise ValueError("angle must lie in [0, pi]")
    sh = None
    if depth is not None:
        sh = math.sinh(depth)
    elif wrist is not None:
        sh = wrist / (2 * math.pi)
    elif volume is not None and systole is not None:
        sh = math.sqrt(volume / (math.pi * systole))
    if sh is None:
        raise ValueError("tube is underdetermined: give the depth or wrist, or both volume and systole")
    l = systole
    if l is None:
        if volume is None:
            raise ValueError("tube is underdetermined: give the systole or the volume")
        l = volume / (math.pi * sh * sh)
    r = math.asinh(sh)
    shape = TubeShape(r, l, angle, math.pi * l * sh * sh, 2 * math.pi * sh)
    for name, v in given.items():
        if v is not None and not _close(v, getattr(shape, name)):
            raise ValueError(f"inconsistent tube data: {name}={v!r} but the other values give {getattr(shape, name)!r}")
    return shape


def ball_volume(r: float) -> float:
    """Volume of a hyperbolic ball of radius r, pi (sinh 2r - 2r).

    For small r the direct formula cancels badly, so the series is used there.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r < 1e-2:
        # sinh(2r) - 2r = sum_{j>=1} (2r)^(2j+1) / (2j+1)!
        x = 2 * r
        term, total, j = x, 0.0, 0
        while True:
            j += 1
            term *= x * x / ((2 * j) * (2 * j + 1))
            if term <= 1e-18 * total:
                break
            total += term
        return math.pi * total
    return math.pi * (math.sinh(2 * r) - 2 * r)


def visibility_radius(rho: float) -> float:
    """Distance within which tube boundary points are seen directly, rho * arsinh(1/sqrt 3)."""
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")
    return rho * math.asinh(1 / math.sqrt(3))


# ---------------------------------------------------------------------------
# geometric chains


@dataclass(frozen=True)
class GeometricProfile:
    """Thick volume ``vol_w``, tube wrists and the global data of a closed manifold.

    ``tube_volumes`` and ``tube_systoles`` are optional per-tube data;
    ``genus`` is the genus of a diagram built from the decomposition.
    """

    vol_w: float | None = None
    wrists: tuple[float, ...] = ()
    total_vol: float | None = None
    systole: float | None = None
    eps: float = 1.0
    mu: float = MEYERHOFF_MU
    tube_volumes: tuple[float, ...] = ()
    tube_systoles: tuple[float, ...] = ()
    genus: int | None = None
    Dmu: float | None = None

    def __post_init__(self):
        if not 0 < self.eps <= 1:
            raise ValueError("eps must lie in (0, 1]")
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        for name in ("vol_w", "total_vol", "systole", "Dmu"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("wrists", "tube_volumes", "tube_systoles"):
            if any(not v > 0 for v in getattr(self, name)):
                raise ValueError(f"every entry of {name} must be positive")
        if self.tube_systoles and len(self.tube_systoles) != len(self.tube_volumes):
            raise ValueError("tube_systoles and tube_volumes must have the same length")

    @property
    def s(self) -> int:
        return len(self.wrists)


def length_cap(vol_w: float, wrists: Sequence[float], eps: float) -> float:
    """10^22 (eps^-3 Vol(W) + eps^-1 sum Wri): a cap on the Heegaard presentation length."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return 1e22 * (vol_w / eps**3 + sum(wrists) / eps)


def volume_entropy_cap(total_vol: float, systole: float) -> float:
    """10^20 Vol(M) log(3 + 1/Syst(M)); ``systole=math.inf`` gives the limit."""
    return 1e20 * total_vol * math.log(3 + 1 / systole)


def assembled_entropy_bound(genus: int, wrists: Sequence[float]) -> float:
    """2 (30 (g - s) + 60 s + sum log Wri) for a diagram of genus g with s thin curves."""
    s = len(wrists)
    if genus < s:
        raise ValueError("genus must be at least the number of tubes")
    return 2 * (30 * (genus - s) + 60 * s + sum(math.log(w) for w in wrists))


def wrist_sum_coefficient(mu: float) -> float:
    return math.sqrt(3) * (mu / 8) ** -1.5


def wrist_sum_check(volumes: Sequence[float], systoles: Sequence[float], mu: float) -> tuple[float, float]:
    """(sum of wrists, its cap) for short tubes given by volume and systole.

    The cap is ``sqrt 3 (mu/8)^(-3/2) Syst(M)^(-1/2) sum Vol``, with Syst(M)
    taken as the shortest tube systole.
    """
    if not volumes:
        return 0.0, 0.0
    lhs = sum(math.sqrt(4 * math.pi * v / l) for v, l in zip(volumes, systoles))
    rhs = wrist_sum_coefficient(mu) / math.sqrt(min(systoles)) * sum(volumes)
    return lhs, rhs


def arithmetic_constant(mu: float, Dmu: float | None) -> float:
    """10^23 ((mu/8)^-3 + (mu/8)^-1 D(mu)); ``Dmu`` must be supplied."""
    if Dmu is None:
        raise ValueError("the constant D(mu) must be supplied to evaluate C")
    e = mu / 8
    return 1e23 * (e**-3 + Dmu / e)


@dataclass(frozen=True)
class GeometricReport:
    length_cap: float | None
    volume_entropy_cap: float | None
    assembled_entropy: float | None
    wrist_sum_coefficient: float
    wrist_sum: float | None
    wrist_sum_cap: float | None
    short_systole: float
    short_tube_volume_floor: float
    collar_width: float
    tube_count_cap: float | None
    delta: float
    thin_curve_caps: tuple[float, ...]
    thick_curve_cap: float
    genus_cap: float | None
    C: float | None


def geometric_entropy_bounds(p: GeometricProfile) -> GeometricReport:
    eps, mu = p.eps, p.mu
    delta = eps / 10
    ratio = eps / delta
    floor = (4 * math.pi / 3) * (mu / 8) ** 3
    lhs = rhs = None
    if p.tube_volumes and p.tube_systoles:
        lhs, rhs = wrist_sum_check(p.tube_volumes, p.tube_systoles, mu)
    elif p.tube_volumes and p.systole is not None:
        rhs = wrist_sum_coefficient(mu) / math.sqrt(p.systole) * sum(p.tube_volumes)
    return GeometricReport(
        length_cap=length_cap(p.vol_w, p.wrists, eps) if p.vol_w is not None else None,
        volume_entropy_cap=(
            volume_entropy_cap(p.total_vol, p.systole) if p.total_vol is not None and p.systole is not None else None
        ),
        assembled_entropy=assembled_entropy_bound(p.genus, p.wrists) if p.genus is not None else None,
        wrist_sum_coefficient=wrist_sum_coefficient(mu),
        wrist_sum=lhs,
        wrist_sum_cap=rhs,
        short_systole=mu / 4,
        short_tube_volume_floor=floor,
        collar_width=mu / 8,
        tube_count_cap=p.total_vol / floor if p.total_vol is not None else None,
        delta=delta,
        thin_curve_caps=tuple(ratio**14 * w * 1e7 / delta for w in p.wrists),
        thick_curve_cap=ratio**6 * 1e3,
        genus_cap=p.s + ratio**6 * p.vol_w * 1e3 / delta**3 if p.vol_w is not None else None,
        C=arithmetic_constant(mu, p.Dmu) if p.Dmu is not None else None,
    )


# ---------------------------------------------------------------------------
# a family with fast entropy growth


@dataclass(frozen=True)
class PennerReport:
    n: int
    genus: int
    matrix: Matrix
    eigenvalues: tuple[float, float]
    spectral_radius: float
    entropy_floor: float
    wrist_model: float | None = None
    systole_model: float | None = None
    k_constant: float | None = None  # 1 + 2 Vol of the cusped limit

    @property
    def determinant(self) -> int:
        return det(self.matrix)

    @property
    def characteristic_polynomial(self) -> list[int]:
        return charpoly(self.matrix)


def penner_matrix(n: int, genus: int) -> Matrix:
    """Homology action of T_x^n T_y^-1 on a symplectic basis (column vectors)."""
    size = 2 * genus
    m = [[int(i == j) for j in range(size)] for i in range(size)]
    m[0][0], m[0][1], m[1][0], m[1][1] = n + 1, n, 1, 1
    return m


def penner_family(
    n: int,
    genus: int = 2,
    w_inf: float | None = None,
    vol_inf: float | None = None,
    vol_cusped: float | None = None,
) -> PennerReport:
    """``w_inf`` and ``vol_inf`` describe the limiting horocusp (meridian length
    and volume); ``vol_cusped`` is the volume of the cusped limit manifold."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if genus < 2:
        raise ValueError("genus must be at least 2")
    root = math.sqrt(n * n + 4 * n)
    hi = (n + 2 + root) / 2
    # the product of the pair is 1; dividing avoids cancellation in n + 2 - root
    lo = 1 / hi
    wrist = systole = None
    if w_inf is not None:
        wrist = n * w_inf
        if vol_inf is not None and n > 0:
            systole = vol_inf * 4 * math.pi / (w_inf * w_inf) / (n * n)
    if vol_cusped is not None and not vol_cusped > 0:
        raise ValueError("vol_cusped must be positive")
    k_const = 1 + 2 * vol_cusped if vol_cusped is not None else None
    return PennerReport(n, genus, penner_matrix(n, genus), (lo, hi), hi, math.log(hi), wrist, systole, k_const)


def entropy_transform(ent: float, multiple: int = 1, cover_degree: int = 1) -> float:
    """Entropy of ``multiple * phi`` pulled back to a cover of any degree: ent / multiple."""
    if ent < 0:
        raise ValueError("entropy is nonnegative")
    if multiple < 1 or cover_degree < 1:
        raise ValueError("multiple and cover degree must be positive")
    return ent / multiple
