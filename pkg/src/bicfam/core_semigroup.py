"""Triples (i, j, F) under the piecewise bicyclic-style product.

The product of (i1,j1,F1) and (i2,j2,F2) is

    (i1-j1+i2, j2, (j1-i2+F1) meet F2)   when j1 <= i2,
    (i1, j1-i2+j2, F1 meet (i2-j1+F2))   when j1 >= i2,

the two branches agreeing at j1 = i2.  The set component is always a
member meet a downward shift of a member, so closed families are stable
under the product.  When the set component comes out empty the product
collapses to the single absorbing Zero, provided the context has one
(the empty set belongs to the family, or a zero was adjoined); an empty
product in a context without zero means the family was not closed and
is reported as corruption.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Tuple, Union

from .errors import (
    FamilyNotClosedError,
    NoIdentityError,
    OutsideFamilyError,
    PreconditionError,
    SetSyntaxError,
)
from .families import Family
from .omega_sets import FULL, Cursor, OmegaSet, format_set, parse_set_at
from .reports import build_report


@dataclass(frozen=True)
class Element:
    i: int
    j: int
    fset: OmegaSet

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise ValueError("indices must be natural numbers")

    def __str__(self) -> str:
        return f"({self.i},{self.j},{format_set(self.fset)})"

    def __repr__(self) -> str:
        return str(self)


@dataclass(frozen=True)
class Zero:
    """The adjoined absorbing element; also the class of the collapsed
    empty-set ideal when {} belongs to the family."""

    def __str__(self) -> str:
        return "0"

    def __repr__(self) -> str:
        return "0"


ZERO = Zero()

ExtElement = Union[Element, Zero]


def is_zero(x: ExtElement) -> bool:
    return isinstance(x, Zero)


def element_sort_key(x: ExtElement):
    """Deterministic order: Zero first, then lexicographic (i, j, literal)."""
    if is_zero(x):
        return (0, 0, 0, "")
    return (1, x.i, x.j, format_set(x.fset))


@dataclass(frozen=True)
class AlgebraContext:
    family: Family
    zero_adjoined: bool = False

    @property
    def has_zero(self) -> bool:
        return self.zero_adjoined or self.family.has_empty

    def describe(self) -> str:
        base = self.family.describe()
        return base + "+0" if self.zero_adjoined else base

    def element(self, i: int, j: int, fset: OmegaSet) -> ExtElement:
        """The single validation point: empty sets collapse to Zero,
        everything else must be a family member."""
        if fset.is_empty():
            if self.has_zero:
                return ZERO
            raise OutsideFamilyError("empty set component in a context without zero")
        if not self.family.contains(fset):
            raise OutsideFamilyError(f"{format_set(fset)} is not a member of {self.family.describe()}")
        return Element(i, j, fset)

    def require(self, x: ExtElement) -> ExtElement:
        if is_zero(x):
            if not self.has_zero:
                raise OutsideFamilyError("this context has no zero element")
            return x
        return self.element(x.i, x.j, x.fset)


def _raw_product(a: Element, b: Element) -> Element:
    """The formula with no family bookkeeping; may return an empty set
    component."""
    if a.j <= b.i:
        return Element(a.i - a.j + b.i, b.j, a.fset.shift(a.j - b.i).intersect(b.fset))
    return Element(a.i, a.j - b.i + b.j, a.fset.intersect(b.fset.shift(b.i - a.j)))


def _branch_low(a: Element, b: Element) -> Element:
    """First branch, valid when a.j <= b.i."""
    return Element(a.i - a.j + b.i, b.j, a.fset.shift(a.j - b.i).intersect(b.fset))


def _branch_high(a: Element, b: Element) -> Element:
    """Second branch, valid when a.j >= b.i."""
    return Element(a.i, a.j - b.i + b.j, a.fset.intersect(b.fset.shift(b.i - a.j)))


def multiply(ctx: AlgebraContext, a: ExtElement, b: ExtElement) -> ExtElement:
    if is_zero(a) or is_zero(b):
        return ZERO
    raw = _raw_product(a, b)
    if raw.fset.is_empty():
        if ctx.has_zero:
            return ZERO
        raise FamilyNotClosedError(
            f"product of {a} and {b} has empty set component in a context without zero"
        )
    if not ctx.family.contains(raw.fset):
        raise FamilyNotClosedError(
            f"product set {format_set(raw.fset)} escaped the family {ctx.family.describe()}"
        )
    return raw


def product(ctx: AlgebraContext, factors: Iterable[ExtElement]) -> ExtElement:
    items = list(factors)
    if not items:
        raise PreconditionError("empty product")
    acc = items[0]
    for x in items[1:]:
        acc = multiply(ctx, acc, x)
    return acc


def inverse(a: Element) -> Element:
    """(j, i, F); the defining equations are asserted, not assumed."""
    if is_zero(a):
        raise PreconditionError("inverse of zero")
    inv = Element(a.j, a.i, a.fset)
    assert _raw_product(_raw_product(a, inv), a) == a
    assert _raw_product(_raw_product(inv, a), inv) == inv
    return inv


def is_idempotent(ctx: AlgebraContext, a: ExtElement) -> bool:
    if is_zero(a):
        return True
    direct = multiply(ctx, a, a) == a
    assert direct == (a.i == a.j)
    return direct


def identity_of(ctx: AlgebraContext) -> Element:
    """(0,0,[0)) when [0) is a member; asserted two-sided on a window."""
    if not ctx.family.has_zero_tail:
        raise NoIdentityError("the family has no [0) member, no identity is certified")
    e = Element(0, 0, FULL)
    for x in enumerate_window(ctx, 2, 2):
        assert multiply(ctx, e, x) == x and multiply(ctx, x, e) == x
    return e


def enumerate_window(ctx: AlgebraContext, n: int, k_bound: int) -> Tuple[Element, ...]:
    """All (i,j,F) with i,j <= n and F a family member in view, ordered
    lexicographically by (i, j, literal).  Zero is never included."""
    if n < 0 or k_bound < 0:
        raise PreconditionError("window bounds must be natural numbers")
    fsets = sorted(
        (f for f in ctx.family.members_within(k_bound) if not f.is_empty()),
        key=format_set,
    )
    return tuple(
        Element(i, j, f) for i in range(n + 1) for j in range(n + 1) for f in fsets
    )


class ProductCache:
    """Memoized multiply for the exhaustive suites."""

    __slots__ = ("ctx", "cache")

    def __init__(self, ctx: AlgebraContext):
        self.ctx = ctx
        self.cache = {}

    def mul(self, a: ExtElement, b: ExtElement) -> ExtElement:
        key = (a, b)
        got = self.cache.get(key)
        if got is None:
            got = multiply(self.ctx, a, b)
            self.cache[key] = got
        return got


def axioms_report(ctx: AlgebraContext, n: int, k_bound: int):
    """Exhaustive window suite: associativity, branch agreement at the
    case boundary, inverse existence and uniqueness, idempotent
    characterization and commutation, zero absorption."""
    window = enumerate_window(ctx, n, k_bound)
    elements: List[ExtElement] = list(window)
    if ctx.has_zero:
        elements.append(ZERO)
    pc = ProductCache(ctx)
    counterexamples = []

    triples = 0
    for a in elements:
        for b in elements:
            ab = pc.mul(a, b)
            for c in elements:
                triples += 1
                if pc.mul(ab, c) != pc.mul(a, pc.mul(b, c)):
                    counterexamples.append(
                        {"kind": "associativity", "a": a, "b": b, "c": c}
                    )

    boundary = 0
    for a in window:
        for b in window:
            if a.j == b.i:
                boundary += 1
                if _branch_low(a, b) != _branch_high(a, b):
                    counterexamples.append({"kind": "branch-boundary", "a": a, "b": b})

    # inverse search bound: indices up to n plus the largest tail start in view
    if ctx.family.all_tails:
        reach = k_bound
    else:
        reach = ctx.family.max_member_size
    search = enumerate_window(ctx, n + max(k_bound, reach), k_bound)
    for a in window:
        found = [
            x
            for x in search
            if pc.mul(pc.mul(a, x), a) == a and pc.mul(pc.mul(x, a), x) == x
        ]
        if found != [inverse(a)]:
            counterexamples.append(
                {"kind": "inverse-uniqueness", "a": a, "found": ",".join(map(str, found))}
            )

    idems = [e for e in elements if is_idempotent(ctx, e)]
    for e in idems:
        if not is_zero(e) and e.i != e.j:
            counterexamples.append({"kind": "idempotent-shape", "e": e})
    for e in idems:
        for f in idems:
            if pc.mul(e, f) != pc.mul(f, e):
                counterexamples.append({"kind": "idempotents-commute", "e": e, "f": f})

    if ctx.has_zero:
        for x in elements:
            if pc.mul(x, ZERO) != ZERO or pc.mul(ZERO, x) != ZERO:
                counterexamples.append({"kind": "zero-absorbing", "x": x})

    return build_report(
        suite="axioms",
        context=ctx.describe(),
        params={"N": n, "k_bound": k_bound},
        counterexamples=counterexamples,
        counts={
            "elements": len(elements),
            "triples": triples,
            "boundary_pairs": boundary,
            "idempotents": len(idems),
        },
    )


def translate_cover_report(ctx: AlgebraContext, n: int, k_bound: int):
    """Window check of the covering identity: the left and right
    translates of t = (0,0,[1)) reach every element except (0,0,[0)),
    and nothing maps onto (0,0,[0)) at all.

    Preimages are searched one step beyond the window.  The excluded
    point is re-checked on the search window: any hit is a failure.
    """
    family = ctx.family
    if not (family.has_zero_tail and family.contains(OmegaSet.tail_from(1))):
        raise PreconditionError("the covering identity needs [0) and [1) in the family")
    t = Element(0, 0, OmegaSet.tail_from(1))
    unit = Element(0, 0, FULL)
    window = enumerate_window(ctx, n, k_bound)
    search = enumerate_window(ctx, n + 1, k_bound + 1)
    counterexamples = []
    covered = 0
    zero_hits = 0
    left_images = {multiply(ctx, t, x) for x in search}
    right_images = {multiply(ctx, x, t) for x in search}
    images = left_images | right_images
    for w in window:
        if w == unit:
            continue
        if w in images:
            covered += 1
        else:
            counterexamples.append({"kind": "uncovered", "element": w})
    if unit in images:
        zero_hits = sum(1 for x in search if multiply(ctx, t, x) == unit) + sum(
            1 for x in search if multiply(ctx, x, t) == unit
        )
        counterexamples.append({"kind": "excluded-point-hit", "element": unit})
    return build_report(
        suite="cover",
        context=ctx.describe(),
        params={"N": n, "k_bound": k_bound},
        counterexamples=counterexamples,
        counts={
            "window": len(window),
            "covered": covered,
            "excluded_point_preimages": zero_hits,
        },
    )


def certify_relabeling(old: Family, new: Family, m: int, window: int) -> None:
    """Check that (i,j,F) -> (i,j,shift(F,-m)) carries products in the
    old family to products in the new one on the given window."""
    old_ctx = AlgebraContext(old)
    new_ctx = AlgebraContext(new)
    old_window = enumerate_window(old_ctx, window, 0)

    def relabel(x: Element) -> Element:
        return new_ctx.element(x.i, x.j, x.fset.shift(-m))

    mapped = {relabel(x) for x in old_window}
    assert len(mapped) == len(old_window)
    for a in old_window:
        for b in old_window:
            lhs = relabel(multiply(old_ctx, a, b))
            rhs = multiply(new_ctx, relabel(a), relabel(b))
            assert lhs == rhs, f"relabeling broke the product at {a} * {b}"


# -- element literals ----------------------------------------------


def parse_element_at(cur: Cursor) -> ExtElement:
    """`(i,j,SET)` or `0`; membership is NOT checked here."""
    ch = cur.peek()
    if ch == "0":
        cur.pos += 1
        return ZERO
    if ch != "(":
        raise SetSyntaxError("expected '(' or '0'", cur.pos)
    cur.expect("(")
    i = cur.parse_nat()
    cur.expect(",")
    j = cur.parse_nat()
    cur.expect(",")
    fset = parse_set_at(cur)
    cur.expect(")")
    return Element(i, j, fset)


def parse_element(text: str) -> ExtElement:
    cur = Cursor(text)
    x = parse_element_at(cur)
    cur.expect_end()
    return x


def format_element(x: ExtElement) -> str:
    return str(x)
