import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from heegaard import intersection_stats, fixture
from heegaard.bounds import (
    LOG3,
    MEYERHOFF_MU,
    REL_TOL,
    GeometricProfile,
    arithmetic_constant,
    assembled_entropy_bound,
    ball_volume,
    betti_term,
    entropy_bounds,
    entropy_transform,
    geometric_entropy_bounds,
    length_cap,
    penner_family,
    penner_matrix,
    tube_metrics,
    visibility_radius,
    volume_entropy_cap,
    wrist_sum_check,
)

from oracles import poly_mul


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------------------
# entropy from intersection counts


def test_three_three_examples():
    r = entropy_bounds((3, 3), b1=0, fiber_genus=3)
    assert abs(r.fine - LOG3) < 1e-12
    assert abs(r.log3 - LOG3) < 1e-12
    assert r.genus_two is None
    assert abs(r.with_betti - (math.log(9) - math.log(2))) < 1e-12
    r2 = entropy_bounds((3, 3), fiber_genus=2)
    assert abs(r2.genus_two - 2 * LOG3) < 1e-12
    assert r2.fine is None and r2.log3 is None and r2.with_betti is None
    assert r2.best == r2.genus_two


def test_ones_example():
    r = entropy_bounds((1, 1))
    assert r.fine == 0.0 and r.log3 is None
    assert not r.flags["all_k_at_least_3"]
    # the b = 0 formula drops below zero here; best is still the minimum
    assert abs(r.with_betti + math.log(2)) < 1e-15
    assert r.best == r.with_betti


def test_stats_input_and_length_bound():
    r = entropy_bounds(intersection_stats(fixture("block")), length=3, cover_degree=2)
    assert r.k_per_alpha == (3, 3)
    assert abs(r.via_length - 2 * 2 * LOG3) < 1e-12
    assert r.best == r.fine


@pytest.mark.parametrize("ks, kw", [((0, 3), {}), ((3,), {"fiber_genus": 1}), ((), {}), ((3,), {"b1": -1})])
def test_entropy_bounds_errors(ks, kw):
    with pytest.raises(ValueError):
        entropy_bounds(ks, **kw)


def test_betti_term():
    assert betti_term(0, 10) == 0.0
    assert abs(betti_term(1, 1) - math.log(5)) < 1e-15
    assert abs(betti_term(2, 3) - 2 * math.log(1 + 2 * 8 * 9)) < 1e-12


def lhs_rhs(ks):
    g = len(ks)
    return (sum(ks) - 2 * g - 1) * LOG3, sum(map(math.log, ks)) - math.log(min(ks))


def test_log3_derivation_exhaustive():
    count = 0
    for g in (1, 2, 3):
        for ks in itertools.product(range(3, 16), repeat=g):
            a, b = lhs_rhs(ks)
            assert a >= b - 1e-12, ks
            count += 1
    assert count == 13 + 13**2 + 13**3


def test_log3_derivation_random():
    rng = random.Random(20261018)
    for _ in range(10_000):
        g = rng.randint(1, 12)
        ks = [rng.randint(3, 500) for _ in range(g)]
        a, b = lhs_rhs(ks)
        assert a >= b - 1e-9 * max(1.0, abs(a))


def test_concavity_helper_bounded_by_log3():
    rng = random.Random(3)
    xs = [rng.random() or 1.0 for _ in range(10_000)] + [1.0, 1e-12]
    for x in xs:
        assert x * math.log(2 + 1 / x) <= LOG3 + 1e-15
    assert abs(1.0 * math.log(3.0) - LOG3) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=6), st.integers(0, 4))
def test_bounds_are_finite_and_best_is_minimum(ks, b1):
    r = entropy_bounds(ks, b1=b1)
    vals = [v for v in (r.with_betti, r.fine, r.log3) if v is not None]
    assert all(math.isfinite(v) for v in vals)
    assert r.best == min(vals)
    assert r.fine >= 0
    if min(ks) >= 3:
        assert r.log3 >= r.fine - 1e-9


# ---------------------------------------------------------------------------
# tubes and balls


def test_tube_examples():
    t = tube_metrics(depth=math.asinh(1), systole=2)
    assert rel(t.volume, 2 * math.pi) < 1e-12 and rel(t.wrist, 2 * math.pi) < 1e-12
    assert rel(t.systole * t.wrist**2, 4 * math.pi * t.volume) < 1e-12
    u = tube_metrics(volume=2 * math.pi, wrist=2 * math.pi)
    assert rel(u.systole, 2) < 1e-12


def test_tube_identity_grid():
    worst = 0.0
    for i in range(1, 101):
        for j in range(1, 101):
            t = tube_metrics(depth=5 * i / 100, systole=5 * j / 100)
            worst = max(worst, rel(t.systole * t.wrist**2, 4 * math.pi * t.volume))
    assert worst <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 5), st.floats(0.01, 5))
def test_tube_completion_round_trip(r, l):
    t = tube_metrics(depth=r, systole=l)
    for kw in ({"volume": t.volume, "wrist": t.wrist}, {"systole": l, "volume": t.volume}, {"wrist": t.wrist, "systole": l}):
        u = tube_metrics(**kw)
        assert rel(u.depth, r) < 1e-9 and rel(u.systole, l) < 1e-9


def test_tube_errors():
    with pytest.raises(ValueError):
        tube_metrics(depth=1.0)
    with pytest.raises(ValueError):
        tube_metrics(depth=1.0, systole=1.0, wrist=1.0)
    with pytest.raises(ValueError):
        tube_metrics(depth=1.0, systole=1.0, angle=4.0)


def test_ball_volume():
    r = 0.01
    assert rel(ball_volume(r), 4 * math.pi / 3 * r**3) < 0.01
    assert ball_volume(r) > 4 * math.pi / 3 * r**3
    assert rel(ball_volume(1.0), math.pi * (math.sinh(2) - 2)) < 1e-14
    # series and closed form agree where both are accurate
    assert rel(ball_volume(0.0099), math.pi * (math.sinh(0.0198) - 0.0198)) < 1e-6


def test_visibility_radius():
    assert rel(visibility_radius(1.0), math.asinh(1 / math.sqrt(3))) < 1e-15
    with pytest.raises(ValueError):
        visibility_radius(0.0)


# ---------------------------------------------------------------------------
# geometric chains


def test_geometric_examples():
    assert length_cap(1.0, [], 1.0) == 1e22
    for syst in (1e3, 1e6, 1e12):
        assert rel(volume_entropy_cap(1.0, syst), 1e20 * LOG3) < 1e-2
    assert volume_entropy_cap(1.0, math.inf) == 1e20 * LOG3
    mu = MEYERHOFF_MU
    vol = (4 * math.pi / 3) * (mu / 8) ** 3
    lhs, rhs = wrist_sum_check([vol] * 3, [mu / 4] * 3, mu)
    # tubes at the volume floor make the two sides agree
    assert lhs <= rhs * (1 + REL_TOL) and rel(lhs, rhs) < 1e-12
    lhs, rhs = wrist_sum_check([2 * vol, 5 * vol], [mu / 4, mu / 2], mu)
    assert lhs <= rhs


def test_volume_entropy_cap_converges():
    prev = None
    for e in range(1, 13):
        v = volume_entropy_cap(1.0, 10.0**e)
        assert v >= 1e20 * LOG3
        if prev is not None:
            assert v <= prev
        prev = v
    assert rel(prev, 1e20 * LOG3) < 1e-11


def test_geometric_report():
    p = GeometricProfile(vol_w=1.0, wrists=(2.0, 3.0), total_vol=5.0, systole=0.5, eps=0.5, genus=4, Dmu=2.0)
    r = geometric_entropy_bounds(p)
    assert rel(r.length_cap, 1e22 * (8 + 10)) < 1e-12
    assert rel(r.assembled_entropy, 2 * (60 + 120 + math.log(6))) < 1e-12
    assert r.delta == 0.05
    assert len(r.thin_curve_caps) == 2 and r.thick_curve_cap == 1e9
    assert rel(r.genus_cap, 2 + 1e9 / 0.05**3) < 1e-12
    assert rel(r.C, arithmetic_constant(MEYERHOFF_MU, 2.0)) < 1e-15
    assert r.short_systole == MEYERHOFF_MU / 4 and r.collar_width == MEYERHOFF_MU / 8
    assert geometric_entropy_bounds(GeometricProfile(vol_w=1.0)).C is None


def test_geometric_errors():
    with pytest.raises(ValueError):
        arithmetic_constant(MEYERHOFF_MU, None)
    with pytest.raises(ValueError):
        GeometricProfile(eps=1.5)
    with pytest.raises(ValueError):
        GeometricProfile(wrists=(1.0, -1.0))
    with pytest.raises(ValueError):
        assembled_entropy_bound(1, [1.0, 2.0])


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.01, 100), st.floats(0.01, 100),
    st.lists(st.floats(0.01, 100), max_size=4),
    st.floats(0.01, 1), st.floats(0.01, 1),
    st.floats(1e-3, 10), st.floats(1e-3, 10),
)
def test_monotonicity(v1, v2, wrists, e1, e2, s1, s2):
    vlo, vhi = sorted((v1, v2))
    elo, ehi = sorted((e1, e2))
    slo, shi = sorted((s1, s2))
    assert length_cap(vlo, wrists, elo) <= length_cap(vhi, wrists, elo)
    assert length_cap(vlo, wrists, ehi) <= length_cap(vlo, wrists, elo)
    assert length_cap(vlo, wrists, elo) <= length_cap(vlo, wrists + [vhi], elo)
    assert volume_entropy_cap(vlo, slo) <= volume_entropy_cap(vhi, slo)
    assert volume_entropy_cap(vlo, shi) <= volume_entropy_cap(vlo, slo)


# ---------------------------------------------------------------------------
# the fast-entropy family


def test_penner_examples():
    r = penner_family(1)
    assert abs(r.spectral_radius - (3 + math.sqrt(5)) / 2) < 1e-15
    assert abs(r.entropy_floor - 0.9624236501) < 1e-10
    z = penner_family(0)
    assert z.eigenvalues == (1.0, 1.0) and z.entropy_floor == 0.0
    assert penner_family(10).entropy_floor > math.log(10)


def test_penner_identities_exact():
    for g in range(2, 6):
        tail = [1]
        for _ in range(2 * g - 2):
            tail = poly_mul(tail, [1, -1])
        for n in range(0, 101):
            r = penner_family(n, g)
            assert r.determinant == 1
            assert r.characteristic_polynomial == poly_mul([1, -(n + 2), 1], tail)


def test_penner_floor_beats_log_n():
    for n in range(1, 101):
        r = penner_family(n)
        assert r.entropy_floor > math.log(n)
        lo, hi = r.eigenvalues
        assert rel(lo * hi, 1.0) < 1e-12 and rel(lo + hi, n + 2) < 1e-12


def test_penner_matrix_shape_and_models():
    m = penner_matrix(3, 3)
    assert len(m) == 6 and m[0][:2] == [4, 3] and m[1][:2] == [1, 1]
    r = penner_family(4, 2, w_inf=2.0, vol_inf=3.0)
    assert r.wrist_model == 8.0
    assert rel(r.systole_model, 3.0 * 4 * math.pi / 4.0 / 16) < 1e-15
    assert r.k_constant is None
    assert penner_family(4, vol_cusped=2.5).k_constant == 6.0
    with pytest.raises(ValueError):
        penner_family(1, genus=1)
    with pytest.raises(ValueError):
        penner_family(1, vol_cusped=0.0)


def test_entropy_transform():
    assert rel(entropy_transform(LOG3, 3, 1), LOG3 / 3) < 1e-15
    assert entropy_transform(0.5, 1, 7) == 0.5
    assert entropy_transform(0.0, 5, 2) == 0.0
    with pytest.raises(ValueError):
        entropy_transform(-1.0)
