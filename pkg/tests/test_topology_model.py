"""Cofinite neighborhoods, shrink, continuity certification, identity
suites."""

import pytest

from bicfam.errors import PreconditionError
from bicfam.families import Family, omega_closure
from bicfam.omega_sets import parse_set
from bicfam.core_semigroup import (
    ZERO,
    AlgebraContext,
    enumerate_window,
    multiply,
    parse_element,
)
from bicfam.order_solve import LEFT, RIGHT
from bicfam.topology_model import (
    CofiniteNbhd,
    certify_separate_continuity,
    format_nbhd,
    nbhd_diff,
    parse_nbhd,
    proof_identity_suite,
    shrink,
)

TAILS = AlgebraContext(Family.tails())
F0 = AlgebraContext(omega_closure([parse_set("[0)")]))
F01 = AlgebraContext(omega_closure([parse_set("[0)"), parse_set("[1)")]))
F012 = AlgebraContext(omega_closure([parse_set("[0)"), parse_set("[2)")]))


def elem(text):
    return parse_element(text)


def nb(*texts):
    return CofiniteNbhd.of(elem(t) for t in texts)


def test_nbhd_basics():
    u = nb("(1,2,[0))", "(0,0,[0))", "(1,2,[0))")
    assert len(u.excluded) == 2
    assert u.contains(ZERO)
    assert not u.contains(elem("(1,2,[0))"))
    assert u.contains(elem("(2,2,[0))"))
    with pytest.raises(PreconditionError):
        CofiniteNbhd.of([ZERO])


def test_nbhd_diff_examples():
    e1, e2, e3 = elem("(0,0,[0))"), elem("(0,1,[0))"), elem("(1,0,[0))")
    u = CofiniteNbhd.of([e1])
    v = CofiniteNbhd.of([e1, e2, e3])
    assert set(nbhd_diff(u, v)) == {e2, e3}
    assert nbhd_diff(u, u) == ()
    assert nbhd_diff(CofiniteNbhd.FULL_SPACE, CofiniteNbhd.of([e2])) == (e2,)


def test_nbhd_intersection_pools_exclusions():
    u = nb("(0,0,[0))")
    v = nb("(1,1,[0))", "(0,0,[0))")
    w = u.intersect(v)
    assert set(w.excluded) == set(u.excluded) | set(v.excluded)


def test_nbhd_literal_round_trip():
    u = nb("(1,2,{0,2}+[5))", "(0,0,[0))")
    assert parse_nbhd(format_nbhd(u)) == u
    assert parse_nbhd("cofinite ~ {}") == CofiniteNbhd.FULL_SPACE
    assert format_nbhd(CofiniteNbhd.FULL_SPACE) == "cofinite ~ {}"


def test_shrink_frozen_examples():
    v = shrink(F0, LEFT, elem("(0,1,[0))"), nb("(2,2,[0))"))
    assert [str(x) for x in v.excluded] == ["(3,2,[0))"]
    assert shrink(F0, LEFT, elem("(2,1,[0))"), CofiniteNbhd.FULL_SPACE) == CofiniteNbhd.FULL_SPACE
    # nothing maps onto the excluded corner point, so nothing is excluded
    assert shrink(F01, LEFT, elem("(0,0,[1))"), nb("(0,0,[0))")) == CofiniteNbhd.FULL_SPACE


def test_shrink_keeps_translate_inside():
    a = elem("(1,2,[1))")
    u = nb("(0,1,[1))", "(2,2,[0))", "(1,3,[1))")
    for side in (LEFT, RIGHT):
        v = shrink(F01, side, a, u)
        for x in enumerate_window(F01, 6, 6):
            if v.contains(x):
                img = multiply(F01, a, x) if side == LEFT else multiply(F01, x, a)
                assert u.contains(img)
        for x in v.excluded:
            img = multiply(F01, a, x) if side == LEFT else multiply(F01, x, a)
            assert not u.contains(img)


def test_certification_reference_contexts():
    for ctx in (F0, F01, F012, TAILS):
        report = certify_separate_continuity(ctx, 2, 2, max_excl=3, seed=5)
        assert report.passed, report.render_text()
        assert report.counts["shrinks"] > 0


def test_certification_is_deterministic():
    r1 = certify_separate_continuity(F01, 2, 2, max_excl=3, seed=9)
    r2 = certify_separate_continuity(F01, 2, 2, max_excl=3, seed=9)
    assert r1.to_json() == r2.to_json()


def test_identity_suite_instances():
    assert multiply(TAILS, elem("(1,1,[3))"), elem("(0,5,[2))")) == elem("(1,6,[3))")
    assert multiply(TAILS, elem("(1,1,[0))"), elem("(0,5,[2))")) == elem("(1,6,[1))")
    three = multiply(
        TAILS,
        multiply(TAILS, elem("(0,1,[0))"), elem("(3,4,[2))")),
        elem("(1,0,[0))"),
    )
    assert three == elem("(2,3,[2))")


def test_identity_suite_report():
    report = proof_identity_suite(TAILS, 8)
    assert report.passed
    assert report.counts["instances"] > 8 ** 3
    explicit = AlgebraContext(omega_closure([parse_set("[0)"), parse_set("[4)")]))
    assert proof_identity_suite(explicit, 2).passed
    with pytest.raises(PreconditionError):
        proof_identity_suite(explicit, 10)  # tails beyond [5) missing
    with pytest.raises(PreconditionError):
        proof_identity_suite(F0, 0)
