from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from puiseuxform import (
    INFINITY,
    Limits,
    OneForm,
    PuiseuxPoly,
    admissible_steps,
    characteristic_poly,
    count_puiseux_exponents,
    differential,
    expand_branches,
    invariance_residual,
    lemma_checks,
    order,
    poly_from_pairs,
    polygon_of,
    rational_roots,
    series_text,
    support,
    verify_bound,
)

X = PuiseuxPoly.monomial(1, 1)
Y = PuiseuxPoly.monomial(1, 0, 1)

CUSP = OneForm(-3 * X**2, 2 * Y)  # d(y^2 - x^3)
RADIAL = OneForm(Y, -X)  # y dx - x dy
NO_RATIONAL = OneForm(-2 * X, Y)  # Phi(c) = c^2 - 2
DICRITICAL_SIDE = OneForm(X * Y + Y**2, -(X**2) - X * Y)
VERTEX_CHAR = OneForm(3 * Y, -2 * X)  # 3y dx - 2x dy


def step_tuples(branch):
    return [(s.mu, s.c, s.characteristic) for s in branch.steps]


def test_rational_roots_frozen():
    assert rational_roots([(0, -3), (2, 3)]) == (-1, 1)
    assert rational_roots([(0, -2), (2, 1)]) == ()
    assert rational_roots([(1, Fraction(-1, 2)), (3, Fraction(1, 2))]) == (-1, 1)
    assert rational_roots([(1, 1), (2, 1)]) == (-1,)  # c = 0 excluded
    assert rational_roots([(2, 5)]) == ()
    assert rational_roots([(0, 2), (1, -7), (2, 6)]) == (Fraction(1, 2), Fraction(2, 3))


def test_rational_roots_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        rational_roots([(2, 0)])


def test_characteristic_poly_of_cusp_side():
    np = polygon_of(CUSP)
    phi = characteristic_poly(CUSP, support(np, Fraction(3, 2)))
    assert phi.coeffs == ((0, Fraction(-3)), (2, Fraction(3)))
    assert not phi.dicritical
    assert phi(1) == 0 and phi(-1) == 0 and phi(2) == 9


def test_characteristic_poly_dicritical_side():
    np = polygon_of(DICRITICAL_SIDE)
    phi = characteristic_poly(DICRITICAL_SIDE, support(np, 1))
    assert phi.dicritical
    assert phi.coeffs == ()


def test_admissible_steps_on_cusp():
    steps = admissible_steps(CUSP)
    assert [(s.mu, s.c) for s in steps] == [
        (Fraction(3, 2), Fraction(-1)),
        (Fraction(3, 2), Fraction(1)),
    ]
    for s in steps:
        assert s.contact_kind == "side"
        assert s.characteristic
        assert not s.dicritical
        assert (s.q_before, s.q_after) == (1, 2)


def test_admissible_steps_vertex_dicritical():
    steps = admissible_steps(VERTEX_CHAR)
    assert len(steps) == 1
    s = steps[0]
    assert (s.mu, s.c) == (Fraction(3, 2), Fraction(1))
    assert s.contact_kind == "vertex"
    assert s.dicritical and s.characteristic


def test_admissible_steps_respects_mu_minimum():
    assert admissible_steps(CUSP, mu_min=Fraction(3, 2)) != []
    assert admissible_steps(CUSP, mu_min=Fraction(3, 2), strict=True) == []
    assert admissible_steps(CUSP, mu_min=2) == []


def test_cusp_expansion():
    res = expand_branches(CUSP)
    assert [series_text(b.steps) for b in res.branches] == ["-x^(3/2)", "x^(3/2)"]
    for b in res.branches:
        assert b.exact
        assert b.r == 1 == count_puiseux_exponents(b)
        assert b.truncated_at is None
        assert invariance_residual(CUSP, b) is INFINITY
    assert res.notes == []
    report = verify_bound(CUSP, res.branches)
    assert (report.max_r, report.y_order, report.multiplicity) == (1, 2, 2)
    assert report.ok


def test_radial_expansion_keeps_one_representative():
    res = expand_branches(RADIAL)
    assert [series_text(b.steps) for b in res.branches] == ["x"]
    b = res.branches[0]
    assert b.exact and b.r == 0
    assert b.steps[0].dicritical
    assert b.steps[0].contact_kind == "vertex"
    assert invariance_residual(RADIAL, b) is INFINITY
    report = verify_bound(RADIAL, res.branches)
    assert (report.max_r, report.y_order, report.multiplicity) == (0, 1, 2)
    assert report.ok


def test_radial_with_custom_dicritical_samples():
    limits = Limits(dicritical_samples=(Fraction(2), Fraction(-1)))
    res = expand_branches(RADIAL, limits)
    assert [series_text(b.steps) for b in res.branches] == ["-x", "2*x"]
    for b in res.branches:
        assert invariance_residual(RADIAL, b) is INFINITY


def test_no_rational_root_is_a_note_not_a_branch():
    res = expand_branches(NO_RATIONAL)
    assert res.branches == []
    assert len(res.notes) == 1
    assert "no rational continuation" in res.notes[0]
    assert verify_bound(NO_RATIONAL, res.branches).ok


def test_dicritical_side_samples_are_exactly_invariant():
    limits = Limits(dicritical_samples=(Fraction(1), Fraction(3), Fraction(-2)))
    res = expand_branches(DICRITICAL_SIDE, limits)
    assert [series_text(b.steps) for b in res.branches] == ["-2*x", "x", "3*x"]
    for b in res.branches:
        assert b.exact
        assert invariance_residual(DICRITICAL_SIDE, b) is INFINITY


def test_tangent_smooth_pair_emits_both_branches():
    f = (Y - X) * (Y - X - X**2)
    w = differential(f)
    res = expand_branches(w)
    assert [series_text(b.steps) for b in res.branches] == ["x", "x + x^2"]
    for b in res.branches:
        assert b.exact
        assert invariance_residual(w, b) is INFINITY


def test_exponents_increase_strictly_along_a_branch():
    f = (Y**2 - X**3) * (Y**2 - 2 * X**2 * Y + X**4 - X**3)
    res = expand_branches(differential(f))
    assert len(res.branches) == 4
    for b in res.branches:
        mus = [s.mu for s in b.steps]
        assert all(u < v for u, v in zip(mus, mus[1:]))
        qs = [s.q_before for s in b.steps] + [b.steps[-1].q_after]
        assert all(u <= v for u, v in zip(qs, qs[1:]))


def test_truncation_by_ramification_limit():
    # branch x^(3/2) + ... x^(7/4)... cannot pass q = 2
    from puiseuxform import gen_case

    case = gen_case((Fraction(3, 2), Fraction(7, 4)), 0)
    limits = Limits(max_ramification=2)
    res = expand_branches(case.form, limits)
    truncated = [b for b in res.branches if not b.exact]
    assert truncated
    for b in truncated:
        assert b.truncated_at == Fraction(3, 2)
        residual = invariance_residual(case.form, b)
        assert residual is not INFINITY
    assert any("ramification" in n and "pruned" in n for n in res.notes)


def test_truncation_by_exponent_limit_at_root():
    limits = Limits(max_exponent=Fraction(1))
    res = expand_branches(CUSP, limits)
    assert len(res.branches) == 1
    b = res.branches[0]
    assert not b.exact and b.steps == () and b.truncated_at is None
    assert any("exponent beyond limit" in n for n in res.notes)


def test_branch_cap_stops_enumeration():
    limits = Limits(max_branches=1)
    res = expand_branches(CUSP, limits)
    assert len(res.branches) == 1
    assert any("branch limit" in n for n in res.notes)


def test_residual_grows_with_each_term():
    from puiseuxform import BranchStep, PuiseuxBranch

    res = expand_branches(CUSP)
    full = res.branches[1]
    empty = PuiseuxBranch((), 0, None, False)
    assert invariance_residual(CUSP, empty) == 2  # ord_x of a(x, 0)
    assert invariance_residual(CUSP, full) is INFINITY


def test_expand_rejects_bad_input():
    with pytest.raises(ValueError):
        expand_branches(OneForm(PuiseuxPoly.zero(), PuiseuxPoly.zero()))
    with pytest.raises(ValueError):
        expand_branches(OneForm(PuiseuxPoly.const(1), Y))
    frac = poly_from_pairs([(Fraction(3, 2), 0, 1)])
    with pytest.raises(ValueError):
        expand_branches(OneForm(frac, Y))


def test_lemma_checks_on_cusp_trace():
    res = expand_branches(CUSP)
    assert len(res.traces) == 2
    for tr in res.traces:
        rep = lemma_checks(tr)
        assert rep.ok
        (entry,) = rep.steps
        assert entry.l1.status == "vacuous"
        assert entry.l2.status == "pass"
        assert entry.l3.status == "pass"
        assert entry.corollary.status == "pass"


def test_lemma_l2_vacuous_when_contact_becomes_vertex():
    # after the first step of d((y-x)^2 - x^3) the used line meets a vertex
    f = (Y - X) ** 2 - X**3
    res = expand_branches(differential(f))
    assert [series_text(b.steps) for b in res.branches] == [
        "x - x^(3/2)",
        "x + x^(3/2)",
    ]
    for tr in res.traces:
        rep = lemma_checks(tr)
        assert rep.ok
        first, second = rep.steps
        assert first.mu == 1
        assert first.l2.status == "vacuous"
        assert second.mu == Fraction(3, 2)
        assert second.l2.status == "pass"


def test_lemma_l3_and_corollary_on_height_four_jump():
    # first step drops the contact from height 4 to height 2, within the
    # allowed range (bound 3), below the top survivor predicted by L3
    f = (Y**2 - X**3) * (Y**2 - 2 * X**2 * Y + X**4 - X**3)
    w = differential(f)
    res = expand_branches(w)
    assert verify_bound(w, res.branches).ok
    seen = 0
    for tr in res.traces:
        rep = lemma_checks(tr)
        assert rep.ok
        first = rep.steps[0]
        if first.mu == Fraction(3, 2):
            seen += 1
            assert first.l3.status == "pass"
            assert "(-1, 4)" in first.l3.detail and "(1/2, 3)" in first.l3.detail
            assert first.corollary.status == "pass"
            assert "height 2 vs bound 3" in first.corollary.detail
    assert seen > 0


def test_lemma_report_never_raises_on_failure_shapes():
    # a hand-built report entry with a failing check is an entry, not an error
    from puiseuxform import CheckOutcome, StepLemmaReport

    entry = StepLemmaReport(
        Fraction(3, 2),
        CheckOutcome("fail", "x"),
        CheckOutcome("pass", ""),
        CheckOutcome("vacuous", ""),
        CheckOutcome("pass", ""),
    )
    assert not entry.ok


def test_verify_bound_tight_cases():
    # r = y-order on the vertex-characteristic fixture
    res = expand_branches(VERTEX_CHAR)
    report = verify_bound(VERTEX_CHAR, res.branches)
    assert (report.max_r, report.y_order, report.multiplicity) == (1, 1, 2)
    assert report.ok


singular_polys = st.lists(
    st.tuples(
        st.integers(0, 3),
        st.integers(0, 3),
        st.integers(-3, 3),
    ),
    min_size=1,
    max_size=5,
).map(
    lambda ts: poly_from_pairs(
        (ex, ey, c) for ex, ey, c in ts if (ex, ey) != (0, 0)
    )
)


@settings(deadline=None, max_examples=60)
@given(singular_polys)
def test_exact_forms_are_never_dicritical(f):
    if f.is_zero() or order(f) < 2:
        return
    w = differential(f)
    if w.a.is_zero() and w.b.is_zero():
        return
    for s in admissible_steps(w):
        assert not s.dicritical
