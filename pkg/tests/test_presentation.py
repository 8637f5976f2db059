import pytest
from hypothesis import given, settings, strategies as st

from heegaard import fixture, intersection_stats, random_diagram
from heegaard.presentation import (
    Presentation,
    first_homology,
    intersection_matrix,
    presentation_length,
    short_curve_report,
    u_beta_presentation,
)


@pytest.mark.parametrize(
    "name, text, length",
    [("s3", "<u1 | u1>", 0), ("l31", "<u1 | u1^3>", 1), ("s1s2", "<u1 | 1>", 0), ("p3", "<u1 | u1^2>", 0)],
)
def test_fixture_presentations(name, text, length):
    p = u_beta_presentation(fixture(name))
    assert str(p) == text
    assert presentation_length(p) == length


def test_length_of_handmade_words():
    assert presentation_length(Presentation(1, (((1, 1),) * 3,))) == 1
    assert presentation_length(Presentation(1, (((1, 1),),))) == 0
    assert presentation_length(Presentation(2, ((), ((1, 1), (2, -1), (1, 1), (2, 1))))) == 2


@pytest.mark.parametrize(
    "name, factors, b1, matrix",
    [
        ("s3", (), 0, [[1]]),
        ("l31", (3,), 0, [[3]]),
        ("s1s2", (), 1, [[0]]),
        ("p3", (2,), 0, [[2]]),
        ("block", (3, 3), 0, [[3, 0], [0, 3]]),
    ],
)
def test_fixture_homology(name, factors, b1, matrix):
    d = fixture(name)
    h = first_homology(d)
    assert h.invariant_factors == factors and h.betti_one == b1
    assert intersection_matrix(d) == matrix


def test_homology_text():
    assert str(first_homology(fixture("l31"))) == "Z/3"
    assert str(first_homology(fixture("s1s2"))) == "Z"
    assert str(first_homology(fixture("s3"))) == "0"


def test_orientation_override_flips_signs():
    d = fixture("l31")
    assert intersection_matrix(d, beta_signs=[-1]) == [[-3]]
    assert intersection_matrix(d, alpha_signs=[-1]) == [[-3]]
    w = u_beta_presentation(d, alpha_signs=[-1]).relators[0]
    assert [e for _, e in w] == [-1, -1, -1]


def test_short_curves():
    assert short_curve_report(fixture("l31")) == []
    s = short_curve_report(fixture("s1s2"))
    assert [(c.family, c.case) for c in s] == [("alpha", "disjoint"), ("beta", "disjoint")]
    s = short_curve_report(fixture("s3"))
    assert all(c.case == "single-crossing" and "destabilization candidate" in c.notes for c in s)
    s = short_curve_report(fixture("p3"))
    assert all(c.case == "double-same-curve" and abs(c.nu) == 2 for c in s)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), genus=st.integers(1, 3), fh=st.integers(0, 2), budget=st.integers(0, 6))
def test_presentation_properties(seed, genus, fh, budget):
    d = random_diagram(genus, 1, budget, seed, free_handles=min(fh, genus))
    p = u_beta_presentation(d)
    ks = intersection_stats(d).k_per_alpha
    assert [len(w) for w in p.relators] == list(ks)
    assert presentation_length(p) == sum(max(0, k - 2) for k in ks)
    if min(ks) >= 2:
        assert presentation_length(p) == sum(ks) - 2 * d.genus
    # abelianising relator j gives column j of the intersection matrix
    A = intersection_matrix(d)
    for j, w in enumerate(p.relators):
        col = [0] * len(d.betas)
        for g, e in w:
            col[g - 1] += e
        assert col == [row[j] for row in A]
    assert sum(abs(x) for row in A for x in row) <= sum(ks)
    h = first_homology(d)
    assert h.betti_one == min(fh, genus)
    assert h.invariant_factors == ()
