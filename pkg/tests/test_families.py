"""Family construction, closure, and normalization."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicfam.errors import FamilySizeCapError, PreconditionError
from bicfam.families import (
    ALL_TAILS_DIRECTIVE,
    Family,
    adjoin_empty,
    build_family,
    closure_report,
    is_omega_closed,
    normalize_family,
    omega_closure,
    parse_family_lines,
    parse_family_literal,
    resolve_generators,
)
from bicfam.omega_sets import EMPTY, FULL, OmegaSet, parse_set

from oracles import all_canonical, chi, oclosure


def fam(*literals):
    return Family.explicit(parse_set(t) for t in literals)


def test_family_construction_and_flags():
    f = fam("[0)", "[1)")
    assert f.has_zero_tail and f.is_inductive and not f.has_empty
    assert f.contains(parse_set("[1)")) and not f.contains(parse_set("[2)"))
    t = Family.tails()
    assert t.has_zero_tail and t.is_inductive and not t.has_empty
    assert t.contains(parse_set("[9)")) and not t.contains(parse_set("{0}+[2)"))
    assert not t.contains(EMPTY)
    with pytest.raises(ValueError):
        Family.explicit([])


def test_members_within():
    assert Family.tails().members_within(2) == (
        FULL,
        OmegaSet.tail_from(1),
        OmegaSet.tail_from(2),
    )
    assert fam("[0)").members_within(99) == (FULL,)
    assert Family.tails().members_within(0) == (FULL,)


def test_closure_frozen_examples():
    assert omega_closure([parse_set("[0)")]) == fam("[0)")
    assert omega_closure([parse_set("[0)"), parse_set("[2)")]) == fam("[0)", "[1)", "[2)")
    assert omega_closure([parse_set("[1)")]) == fam("[1)")
    # the empty set appears when a finite member meets its own shift
    assert omega_closure([parse_set("{0}")]) == Family.explicit([parse_set("{0}"), EMPTY])


def test_closure_matches_chi_oracle():
    for gens in (
        [parse_set("[0)"), parse_set("[2)")],
        [parse_set("{0}")],
        [parse_set("{0,2}+[4)")],
        [parse_set("{1,3}"), parse_set("[2)")],
    ):
        got = omega_closure(gens)
        expected = oclosure([chi(g) for g in gens])
        assert {chi(m) for m in got.members} == expected


def test_is_omega_closed_witness_is_deterministic():
    ok, witness = is_omega_closed(fam("[0)", "[2)"))
    assert not ok
    f1, n, f2 = witness
    assert (str(f1), n, str(f2)) == ("[0)", 1, "[2)")
    assert is_omega_closed(fam("[0)", "[1)", "[2)")) == (True, None)
    assert is_omega_closed(fam("[0)")) == (True, None)
    with pytest.raises(PreconditionError):
        is_omega_closed(Family.tails())


def test_closure_cap():
    with pytest.raises(FamilySizeCapError) as err:
        omega_closure([parse_set("[0)"), parse_set("[2)")], cap=2)
    assert err.value.cap == 2


def test_adjoin_empty():
    f = adjoin_empty(fam("[0)"))
    assert f.has_empty and f.contains(EMPTY)
    assert adjoin_empty(f) == f
    assert is_omega_closed(f) == (True, None)
    f2 = adjoin_empty(fam("[0)", "[1)"))
    assert f2 == Family.explicit([FULL, OmegaSet.tail_from(1), EMPTY])
    with pytest.raises(PreconditionError):
        adjoin_empty(Family.tails())


def test_normalize_frozen_examples():
    assert normalize_family(fam("[1)")) == (fam("[0)"), 1)
    assert normalize_family(fam("[0)", "[1)")) == (fam("[0)", "[1)"), 0)
    assert normalize_family(fam("[2)", "[3)")) == (fam("[0)", "[1)"), 2)
    assert normalize_family(Family.tails()) == (Family.tails(), 0)


def test_normalize_preconditions():
    with pytest.raises(PreconditionError):
        normalize_family(Family.explicit([parse_set("{0}+[2)")]))  # not inductive
    with pytest.raises(PreconditionError):
        normalize_family(fam("[0)", "[2)"))  # not closed


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.builds(
            OmegaSet.from_bits,
            st.integers(min_value=0, max_value=63),
            st.just(6),
            st.booleans(),
        ),
        min_size=1,
        max_size=4,
    )
)
def test_closure_soundness_random(gens):
    closed = omega_closure(gens)
    assert is_omega_closed(closed) == (True, None)
    for g in gens:
        assert closed.contains(g)


def test_closure_minimality_small_pool():
    # every non-generator member of a small closure is load-bearing
    pool = all_canonical(3)
    checked = 0
    for gens in itertools.chain(
        ((g,) for g in pool), itertools.combinations(pool, 2)
    ):
        closed = omega_closure(gens)
        if len(closed.members) > 6:
            continue
        for member in closed.members:
            if member in gens:
                continue
            pruned = Family.explicit(m for m in closed.members if m != member)
            ok, _ = is_omega_closed(pruned)
            assert not ok, (gens, member)
            checked += 1
    assert checked > 50


def test_tail_generator_closures_are_downward_runs():
    for gens in ([parse_set("[0)"), parse_set("[5)")], [parse_set("[0)"), parse_set("[3)")]):
        closed = omega_closure(gens)
        ks = sorted(m.minimum() for m in closed.members)
        assert ks == list(range(max(ks) + 1))


def test_family_literal_and_file_parsing():
    assert parse_family_literal("[0),[1)") == (FULL, OmegaSet.tail_from(1))
    assert parse_family_literal("{0}+[2); {}") == (parse_set("{0}+[2)"), EMPTY)
    lines = ["# header", "", "[0)  # unit tail", "[1)"]
    assert parse_family_lines(lines) == (FULL, OmegaSet.tail_from(1))
    assert parse_family_lines(["@all-tails", "# fine"]) == ALL_TAILS_DIRECTIVE
    with pytest.raises(PreconditionError):
        parse_family_lines(["@all-tails", "[0)"])


def test_build_family_rejects_non_closed_with_witness():
    with pytest.raises(PreconditionError) as err:
        build_family([FULL, parse_set("[2)")])
    assert "[1)" in str(err.value)


def test_resolve_generators(tmp_path):
    assert resolve_generators("@all-tails") == ALL_TAILS_DIRECTIVE
    assert resolve_generators("[0),[1)") == (FULL, OmegaSet.tail_from(1))
    path = tmp_path / "family.txt"
    path.write_text("[0)\n[1)\n")
    assert resolve_generators(str(path)) == (FULL, OmegaSet.tail_from(1))
    from bicfam.errors import SetSyntaxError

    with pytest.raises(SetSyntaxError):
        resolve_generators(str(tmp_path / "missing.txt"))


def test_closure_report_passes_and_is_seeded():
    r1 = closure_report(fam("[0)", "[1)"), seed=7, trials=20)
    r2 = closure_report(fam("[0)", "[1)"), seed=7, trials=20)
    assert r1.passed and r1.to_json() == r2.to_json()
    r3 = closure_report(Family.tails(), seed=0, trials=5)
    assert r3.passed
