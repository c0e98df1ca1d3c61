"""Families of eventually-constant sets closed under shifted intersection.

A family here is a collection of subsets of omega closed under the rule
F1, F2 in the family implies F1 meet shift(F2, -n) in the family for
every n >= 0.  Two kinds are supported: an explicit finite collection,
and the infinite family of all tails [k), which is closed by
construction and never materialized.

Only n up to the prefix length of F2 matter when checking closure: for
n >= len(F2) the shifted set has stabilized to {} or [0), so larger n
cannot produce anything new.  This bound is asserted where it is used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

from .errors import FamilySizeCapError, PreconditionError
from .omega_sets import EMPTY, FULL, Cursor, OmegaSet, format_set, parse_set_at

DEFAULT_FAMILY_CAP = 4096

ALL_TAILS_DIRECTIVE = "@all-tails"


def _member_key(fset: OmegaSet) -> str:
    return format_set(fset)


@dataclass(frozen=True)
class Family:
    """Either an explicit finite collection (``members`` sorted by
    literal, deduplicated) or the infinite tail family ``all_tails``."""

    members: Optional[Tuple[OmegaSet, ...]]
    all_tails: bool

    def __post_init__(self):
        if self.all_tails != (self.members is None):
            raise ValueError("exactly one of members/all_tails must be set")
        if self.members is not None:
            if not self.members:
                raise ValueError("a family must be a nonempty collection")
            keys = [_member_key(m) for m in self.members]
            if keys != sorted(set(keys)):
                raise ValueError("members must be sorted and deduplicated")

    @staticmethod
    def explicit(members: Iterable[OmegaSet]) -> "Family":
        """Explicit family; trusts the caller on closedness.  Builders
        that accept outside input verify via is_omega_closed."""
        ordered = tuple(sorted(set(members), key=_member_key))
        return Family(ordered, False)

    @staticmethod
    def tails() -> "Family":
        return Family(None, True)

    # -- membership and views ---------------------------------------

    def contains(self, fset: OmegaSet) -> bool:
        if self.all_tails:
            return fset.tail and fset.mask == 0
        return fset in self._member_set

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members or ())

    def members_within(self, bound: int) -> Tuple[OmegaSet, ...]:
        """Explicit kind: all members.  all_tails: the tails [0)..[bound)."""
        if self.all_tails:
            return tuple(OmegaSet.tail_from(k) for k in range(bound + 1))
        return self.members

    # -- flags -------------------------------------------------------

    @cached_property
    def has_zero_tail(self) -> bool:
        return self.contains(FULL)

    @cached_property
    def has_empty(self) -> bool:
        return self.contains(EMPTY)

    @cached_property
    def is_inductive(self) -> bool:
        """Every member inductive and nonempty (so every member is a tail)."""
        if self.all_tails:
            return True
        return all(m.is_inductive() and not m.is_empty() for m in self.members)

    @cached_property
    def max_member_size(self) -> int:
        if self.all_tails:
            raise PreconditionError("all_tails has unbounded member size")
        return max(m.size for m in self.members)

    def describe(self) -> str:
        if self.all_tails:
            return ALL_TAILS_DIRECTIVE
        return "{" + ",".join(format_set(m) for m in self.members) + "}"

    def __str__(self) -> str:
        return self.describe()


def is_omega_closed(family: Family):
    """(True, None), or (False, (F1, n, F2)) with the first escaping triple.

    Scan order: F1 in member order, n ascending, F2 in member order, so
    the witness is deterministic.
    """
    if family.all_tails:
        raise PreconditionError("all_tails is closed by construction")
    members = family.members
    max_n = family.max_member_size + 1
    for f1 in members:
        for n in range(max_n + 1):
            for f2 in members:
                if not family.contains(f1.meet_shift(n, f2)):
                    return False, (f1, n, f2)
    return True, None


def omega_closure(generators: Iterable[OmegaSet], cap: int = DEFAULT_FAMILY_CAP) -> Family:
    """Least family containing the generators and closed under shifted
    intersection.

    Terminates because every product F1 meet shift(F2, -n) has prefix no
    longer than the longest generator prefix, so everything lives in a
    finite universe of candidate sets.
    """
    pool = set(generators)
    if not pool:
        raise PreconditionError("closure needs at least one generator")
    frontier = list(pool)
    while frontier:
        fresh = []
        current = sorted(pool, key=_member_key)
        for f2 in frontier:
            # beyond the prefix the shift has stabilized
            assert f2.shift(-f2.size) == f2.shift(-(f2.size + 1))
            for f1 in current:
                for a, b in ((f1, f2), (f2, f1)):
                    for n in range(b.size + 2):
                        prod = a.meet_shift(n, b)
                        if prod not in pool:
                            pool.add(prod)
                            fresh.append(prod)
                            if len(pool) > cap:
                                raise FamilySizeCapError(cap)
        frontier = fresh
    return Family.explicit(pool)


def adjoin_empty(family: Family) -> Family:
    """The family together with {}; idempotent, stays closed ({} absorbs)."""
    if family.all_tails:
        raise PreconditionError("adjoin_empty needs an explicit family")
    if family.has_empty:
        return family
    return Family.explicit(family.members + (EMPTY,))


def normalize_family(family: Family, window: int = 4):
    """Shift all members down uniformly so the family contains [0).

    Returns (shifted family, m) where m is the least member minimum.
    Requires a closed family of nonempty inductive members; the
    relabeling (i,j,F) -> (i,j,shift(F,-m)) is certified to preserve
    products on a test window before the result is returned.
    """
    if family.all_tails:
        return family, 0
    if not family.is_inductive:
        raise PreconditionError("normalize_family needs an inductive family")
    ok, witness = is_omega_closed(family)
    if not ok:
        f1, n, f2 = witness
        raise PreconditionError(
            f"family is not closed: {format_set(f1)} meet shift({format_set(f2)},-{n}) escapes"
        )
    m = min(f.minimum() for f in family.members)
    shifted = Family.explicit(f.shift(-m) for f in family.members)
    assert shifted.has_zero_tail
    ok, _ = is_omega_closed(shifted)
    assert ok
    if m:
        from . import core_semigroup as _core

        _core.certify_relabeling(family, shifted, m, window)
    return shifted, m


# -- text sources ---------------------------------------------------


def parse_family_literal(text: str) -> Tuple[OmegaSet, ...]:
    """Comma- or semicolon-separated set literals, e.g. "[0),[1)"."""
    cur = Cursor(text)
    members = [parse_set_at(cur)]
    while cur.peek() in (",", ";"):
        cur.pos += 1
        members.append(parse_set_at(cur))
    cur.expect_end()
    return tuple(members)


def parse_family_lines(lines: Iterable[str]):
    """Family file body: one set literal per line, '#' comments, blank
    lines ignored; the line '@all-tails' selects the infinite family.

    Returns ALL_TAILS_DIRECTIVE or a tuple of sets.
    """
    members = []
    saw_directive = False
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == ALL_TAILS_DIRECTIVE:
            saw_directive = True
            continue
        members.append(parse_set_at_full(line))
    if saw_directive:
        if members:
            raise PreconditionError("@all-tails cannot be mixed with explicit members")
        return ALL_TAILS_DIRECTIVE
    return tuple(members)


def parse_set_at_full(text: str) -> OmegaSet:
    cur = Cursor(text)
    fset = parse_set_at(cur)
    cur.expect_end()
    return fset


def build_family(members: Sequence[OmegaSet]) -> Family:
    """Explicit family from outside input; rejects non-closed input
    with the escaping witness."""
    family = Family.explicit(members)
    ok, witness = is_omega_closed(family)
    if not ok:
        f1, n, f2 = witness
        raise PreconditionError(
            "family is not closed under shifted intersection: "
            f"{format_set(f1)} meet shift({format_set(f2)},-{n}) = "
            f"{format_set(f1.meet_shift(n, f2))} is missing"
        )
    return family


def resolve_generators(source: str):
    """CLI family source: '@all-tails', a file path, or an inline literal.

    Returns ALL_TAILS_DIRECTIVE or a tuple of sets, without any
    closedness check (the closure command wants raw generators).
    """
    text = source.strip()
    if text == ALL_TAILS_DIRECTIVE:
        return ALL_TAILS_DIRECTIVE
    if text and text[0] in "{[":
        return parse_family_literal(text)
    try:
        with open(source, "r", encoding="utf-8") as fh:
            return parse_family_lines(fh)
    except OSError as exc:
        from .errors import SetSyntaxError

        raise SetSyntaxError(f"family source is neither a literal nor a readable file: {exc}", 0)


def resolve_family(source: str) -> Family:
    gens = resolve_generators(source)
    if gens == ALL_TAILS_DIRECTIVE:
        return Family.tails()
    return build_family(gens)


# -- the closure property suite ------------------------------------


def random_generators(rng: random.Random, max_count: int = 4, max_size: int = 6):
    count = rng.randint(1, max_count)
    gens = []
    for _ in range(count):
        size = rng.randint(0, max_size)
        gens.append(OmegaSet.from_bits(rng.getrandbits(size) if size else 0, size, rng.random() < 0.5))
    return tuple(gens)


def closure_report(family: Family, seed: int, trials: int = 50, cap: int = DEFAULT_FAMILY_CAP):
    """Suite: the ambient family is closed, closure is idempotent on it,
    and closures of random generator sets are closed (seeded)."""
    from .reports import build_report

    counterexamples = []
    counts = {"trials": trials}
    if family.all_tails:
        counts["ambient"] = "closed by construction"
    else:
        ok, witness = is_omega_closed(family)
        counts["ambient_members"] = len(family.members)
        if not ok:
            f1, n, f2 = witness
            counterexamples.append(
                {"kind": "ambient-not-closed", "f1": format_set(f1), "n": str(n), "f2": format_set(f2)}
            )
        elif omega_closure(family.members, cap) != family:
            counterexamples.append({"kind": "closure-not-idempotent"})
    rng = random.Random(seed)
    for t in range(trials):
        gens = random_generators(rng)
        closed = omega_closure(gens, cap)
        ok, witness = is_omega_closed(closed)
        if not ok:
            f1, n, f2 = witness
            counterexamples.append(
                {
                    "kind": "closure-not-closed",
                    "generators": ",".join(format_set(g) for g in gens),
                    "f1": format_set(f1),
                    "n": str(n),
                    "f2": format_set(f2),
                }
            )
        if all(g.tail and g.mask == 0 for g in gens) and closed.has_zero_tail:
            # tail generators with [0): closure must be a downward-closed run of tails
            ks = sorted(m.minimum() for m in closed.members)
            if ks != list(range(len(ks))):
                counterexamples.append(
                    {"kind": "tail-closure-not-downward", "members": closed.describe()}
                )
    return build_report(
        suite="closure",
        context=family.describe(),
        params={"seed": seed, "trials": trials, "cap": cap},
        counterexamples=counterexamples,
        counts=counts,
    )
