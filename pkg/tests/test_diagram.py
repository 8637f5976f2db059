import pytest
from hypothesis import given, settings, strategies as st

from heegaard import (
    Destabilize,
    DiagramError,
    EraseCurve,
    FingerMove,
    MoveError,
    SurgeFreeCurve,
    apply_move,
    fixture,
    fixture_names,
    intersection_stats,
    parse_diagram,
    random_diagram,
    serialize,
    standard_diagram,
    validate,
)
from heegaard.diagram import canonical_form, cut_components, read_diagram, write_diagram
from heegaard.fixtures import fixture_text
from heegaard.moves import finger_candidates
from heegaard.presentation import intersection_matrix


def arcs_of(d, cid):
    return [a for a in d.arcs if a.curve == cid]


def raw_matrix(d):
    """Signed intersections with the stored curve orientations."""
    return intersection_matrix(d, beta_signs=[1] * len(d.betas))


@pytest.mark.parametrize("name", fixture_names())
def test_fixtures_validate_and_round_trip(name):
    d = fixture(name)
    assert validate(d).valid
    assert parse_diagram(serialize(d)) == d
    assert serialize(parse_diagram(serialize(d))) == serialize(d)


@pytest.mark.parametrize(
    "name, ks, genus",
    [("s3", (1,), 1), ("p3", (2,), 1), ("l31", (3,), 1), ("s1s2", (0,), 1), ("block", (3, 3), 2)],
)
def test_intersection_stats(name, ks, genus):
    st_ = intersection_stats(fixture(name))
    assert st_.k_per_alpha == ks
    assert st_.k == sum(ks)
    assert st_.k_min == min(ks)
    assert st_.o_alpha == ks.count(0)
    assert st_.genus == genus


def test_s1s2_stats_count_free_curves():
    st_ = intersection_stats(fixture("s1s2"))
    assert (st_.o_alpha, st_.o_beta) == (1, 1)


def test_s3_report():
    rep = validate(fixture("s3"))
    assert rep.valid and rep.genus == 1
    assert rep.alpha_components == 1 and rep.alpha_planar


def test_reversed_cycle_breaks_sign_parity():
    text = fixture_text("l31").replace("( +1 +5 -2 -4 )", "( +4 +2 -5 -1 )")
    d = parse_diagram(text, strict=False)
    assert "sign-parity" in validate(d).codes()
    with pytest.raises(DiagramError) as e:
        parse_diagram(text)
    assert e.value.code == "sign-parity"


@pytest.mark.parametrize(
    "old, new, code",
    [
        ("genus 1", "genus 2", "euler"),
        ("point 1 region=1", "point 1 region=9", "dangling-reference"),
        ("arc 3 curve=1 from=3:out to=1:in", "arc 3 curve=1 from=3:out to=1:inn", "syntax"),
        ("vertex 3 alpha=1 beta=2", "vertex 3 alpha=1 beta=7", "dangling-reference"),
    ],
)
def test_corruptions_have_distinct_codes(old, new, code):
    text = fixture_text("l31").replace(old, new)
    with pytest.raises(DiagramError) as e:
        parse_diagram(text)
    assert e.value.code == code


def test_syntax_error_reports_line():
    text = fixture_text("s3").replace("genus 1", "genus one")
    with pytest.raises(DiagramError) as e:
        parse_diagram(text)
    assert e.value.code == "syntax" and e.value.line is not None


def test_missing_header():
    with pytest.raises(DiagramError):
        parse_diagram("genus 1\n")


def test_file_round_trip(tmp_path):
    d = fixture("block")
    write_diagram(d, tmp_path / "b.hd")
    assert read_diagram(tmp_path / "b.hd") == d


def test_cut_components_of_s1s2():
    d = fixture("s1s2")
    for fam in ("alpha", "beta"):
        comps = cut_components(d, fam)
        assert len(comps) == 1 and comps[0].genus == 0


# ---------------------------------------------------------------------------
# moves


def test_finger_move_on_s1s2_adds_opposite_crossings():
    d = fixture("s1s2")
    a, b = d.alphas[0].id, d.betas[0].id
    out = apply_move(d, FingerMove(a, arcs_of(d, a)[0].id, 1, arcs_of(d, b)[0].id))
    assert intersection_stats(out).k == 2
    assert sorted(out.signs.values()) == [-1, 1]
    assert validate(out).valid


def test_destabilize_s3_gives_sphere():
    d = fixture("s3")
    out = apply_move(d, Destabilize(d.alphas[0].id, d.betas[0].id))
    assert out.genus == 0 and not out.curves and len(out.regions) == 1


def test_erase_then_surge_gives_sphere():
    d = fixture("s1s2")
    e = apply_move(d, EraseCurve(d.betas[0].id))
    out = apply_move(e, SurgeFreeCurve(e.alphas[0].id))
    assert out.genus == 0 and len(out.regions) == 1


def test_surge_rejects_crossed_curve():
    d = fixture("l31")
    with pytest.raises(MoveError, match="intersections"):
        apply_move(d, SurgeFreeCurve(d.alphas[0].id))


def test_destabilize_rejects_multiple_crossings():
    d = fixture("l31")
    with pytest.raises(MoveError, match="exactly once"):
        apply_move(d, Destabilize(d.alphas[0].id, d.betas[0].id))


def test_finger_rejects_same_family_target():
    d = fixture("l31")
    a = d.alphas[0].id
    arcs = arcs_of(d, a)
    with pytest.raises(MoveError, match="opposite family"):
        apply_move(d, FingerMove(a, arcs[0].id, 1, arcs[1].id))


@pytest.mark.parametrize("name", fixture_names())
def test_every_finger_candidate_adds_two_vertices(name):
    d = fixture(name)
    A = raw_matrix(d)
    for m in finger_candidates(d):
        out = apply_move(d, m)
        assert len(out.vertices) == len(d.vertices) + 2
        assert raw_matrix(out) == A
        assert validate(out).valid


def test_random_zero_budget_is_standard():
    assert random_diagram(1, 1, 0, 12345) == standard_diagram(1)


def test_random_examples():
    d = random_diagram(2, 1, 5, 7)
    assert validate(d).valid
    assert intersection_stats(d).k == 2 + 2 * 5
    e = random_diagram(3, 2, 10, 1)
    rep = validate(e)
    assert rep.valid and rep.kind == "pointed(2)"
    assert len(e.alphas) == len(e.betas) == 4


@settings(max_examples=40, deadline=None)
@given(
    genus=st.integers(1, 3),
    points=st.integers(1, 2),
    budget=st.integers(0, 6),
    seed=st.integers(0, 2**64 - 1),
)
def test_random_diagrams_are_valid_and_reproducible(genus, points, budget, seed):
    d = random_diagram(genus, points, budget, seed)
    assert validate(d).valid
    assert serialize(d) == serialize(random_diagram(genus, points, budget, seed))
    assert raw_matrix(d) == raw_matrix(standard_diagram(genus, points))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), genus=st.integers(1, 3))
def test_euler_identity(seed, genus):
    d = random_diagram(genus, 1, 4, seed)
    seg = [a for a in d.arcs if not a.closed]
    chi = len(d.vertices) - len(seg) + sum(r.euler for r in d.regions)
    assert chi == 2 - 2 * d.genus


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_canonical_form_is_idempotent(seed):
    d = random_diagram(2, 1, 3, seed)
    c, _ = canonical_form(d)
    assert canonical_form(c)[0] == c
