"""The natural partial order, up-cones, and finite-fiber equation solving.

Order: a is below b exactly when k = a.i - b.i = a.j - b.j is a natural
number and a's set is contained in b's set shifted down by k (the set
inclusion is evaluated inside omega, which is where all our sets live).
Equivalently a = b * e for an idempotent e; the two formulations are
cross-checked by the order suite.

Solving p * x = q walks the up-cone of inverse(p) * q and filters by
the equation, which the finiteness of up-cones makes exact.  The fiber
suite replays every window cell against a brute-force scan over a
provably sufficient enlargement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import PreconditionError
from .core_semigroup import (
    ZERO,
    AlgebraContext,
    Element,
    ExtElement,
    ProductCache,
    element_sort_key,
    enumerate_window,
    inverse,
    is_zero,
    multiply,
)
from .omega_sets import OmegaSet, format_set
from .reports import build_report

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class SolutionSet:
    """All x with p*x = q (side left) or x*p = q (side right).

    ``bound`` records the search depth used; ``complete`` is False only
    for the bounded brute force that zero targets fall back to, where
    the true fiber can be infinite.
    """

    side: str
    solutions: Tuple[ExtElement, ...]
    bound: int
    complete: bool = True

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise ValueError("side must be left or right")


def nat_leq(ctx: AlgebraContext, a: Element, b: Element) -> bool:
    if is_zero(a) or is_zero(b):
        raise PreconditionError("the order formula is for nonzero elements")
    k = a.i - b.i
    if k != a.j - b.j or k < 0:
        return False
    return a.fset.issubset(b.fset.shift(-k))


def up_cone(ctx: AlgebraContext, a: Element, k_bound: int = 0) -> Tuple[Element, ...]:
    """Everything above a: (a.i-k, a.j-k, F) for 0 <= k <= min(a.i,a.j)
    and every family member F with a.fset inside shift(F, -k).

    Complete without any cap: for the all-tails family a candidate [t)
    can only work when t <= k + min(a.fset), so the scan over that range
    is exhaustive (k_bound merely widens the scanned view, it never
    truncates it).
    """
    if is_zero(a):
        raise PreconditionError("up-cone of zero")
    family = ctx.family
    out: List[Element] = []
    amin = a.fset.minimum()
    for k in range(min(a.i, a.j) + 1):
        if family.all_tails:
            candidates = [OmegaSet.tail_from(t) for t in range(max(k_bound, k + amin) + 1)]
        else:
            candidates = family.members
        for fs in sorted(candidates, key=format_set):
            if a.fset.issubset(fs.shift(-k)):
                if family.all_tails:
                    assert fs.minimum() <= k + amin
                out.append(Element(a.i - k, a.j - k, fs))
    return tuple(out)


def solve(ctx: AlgebraContext, side: str, p: ExtElement, q: ExtElement) -> SolutionSet:
    if side not in (LEFT, RIGHT):
        raise PreconditionError("side must be left or right")
    if is_zero(p):
        raise PreconditionError("solve needs a nonzero translation element")
    if is_zero(q):
        return _solve_zero_target(ctx, side, p)
    if side == LEFT:
        root = multiply(ctx, inverse(p), q)
    else:
        root = multiply(ctx, q, inverse(p))
    if is_zero(root):
        return SolutionSet(side, (), 0, True)
    sols = []
    for x in up_cone(ctx, root):
        lhs = multiply(ctx, p, x) if side == LEFT else multiply(ctx, x, p)
        if lhs == q:
            sols.append(x)
    return SolutionSet(side, tuple(sols), min(root.i, root.j), True)


def _solve_zero_target(ctx: AlgebraContext, side: str, p: Element) -> SolutionSet:
    """Zero targets can have infinite fibers (whole shifted copies of a
    member can meet to empty), so only a bounded scan is offered, marked
    incomplete; contexts without zero reject the query outright."""
    if not ctx.has_zero:
        raise PreconditionError("zero target in a context without zero")
    bound = p.i + p.j + max(p.fset.size, 4) + 4
    sols: List[ExtElement] = [ZERO]
    for x in enumerate_window(ctx, bound, bound):
        lhs = multiply(ctx, p, x) if side == LEFT else multiply(ctx, x, p)
        if is_zero(lhs):
            sols.append(x)
    return SolutionSet(side, tuple(sols), bound, False)


def brute_force_solve(
    ctx: AlgebraContext, side: str, p: Element, q: Element, n: int, k_bound: int
) -> Tuple[Element, ...]:
    """Independent scan of the whole (n, k_bound) window."""
    out = []
    for x in enumerate_window(ctx, n, k_bound):
        lhs = multiply(ctx, p, x) if side == LEFT else multiply(ctx, x, p)
        if lhs == q:
            out.append(x)
    return tuple(out)


def finite_fibers_report(ctx: AlgebraContext, n: int, k_bound: int):
    """Every translation fiber over the window, both sides, cross-checked
    against a brute-force scan of the enlarged window.

    Enlargement max(k_bound, n) + 1 is sufficient: the cone root r =
    inverse(p) * q has indices at most 2n and set minimum at most
    k_bound + n (shifts in the product only move members down), and cone
    members sit within min(r.i, r.j) of the root.
    """
    window = enumerate_window(ctx, n, k_bound)
    extra = max(k_bound, n) + 1
    search = enumerate_window(ctx, n + extra, k_bound + extra)
    counterexamples = []
    max_fiber = 0
    max_cell = None
    cells = 0
    for side in (LEFT, RIGHT):
        for p in window:
            # one pass per p: group the enlarged window by its image
            fibers: Dict[Element, List[Element]] = {}
            for x in search:
                lhs = multiply(ctx, p, x) if side == LEFT else multiply(ctx, x, p)
                fibers.setdefault(lhs, []).append(x)
            for q in window:
                cells += 1
                got = solve(ctx, side, p, q)
                assert got.complete
                expected = fibers.get(q, [])
                if sorted(got.solutions, key=element_sort_key) != sorted(
                    expected, key=element_sort_key
                ):
                    counterexamples.append(
                        {
                            "kind": "fiber-mismatch",
                            "side": side,
                            "p": p,
                            "q": q,
                            "solver": ",".join(map(str, got.solutions)),
                            "brute": ",".join(map(str, expected)),
                        }
                    )
                if len(got.solutions) > max_fiber:
                    max_fiber = len(got.solutions)
                    max_cell = (side, p, q)
    counts = {"cells": cells, "window": len(window), "max_fiber": max_fiber}
    if max_cell:
        counts["max_fiber_at"] = f"{max_cell[0]} p={max_cell[1]} q={max_cell[2]}"
    return build_report(
        suite="fibers",
        context=ctx.describe(),
        params={"N": n, "k_bound": k_bound},
        counterexamples=counterexamples,
        counts=counts,
    )


def order_report(ctx: AlgebraContext, n: int, k_bound: int):
    """Formula order versus the idempotent-witness oracle, plus the
    partial-order laws, exhaustively on the window."""
    window = enumerate_window(ctx, n, k_bound)
    pc = ProductCache(ctx)
    counterexamples = []

    def oracle_leq(a: Element, b: Element) -> bool:
        # search e = (m,m,F) with a = b*e; the canonical witness
        # (a.j, a.j, a.fset) lies within these bounds whenever a <= b
        for m in range(a.i + a.j + b.j + 1):
            for fs in ctx.family.members_within(k_bound):
                if fs.is_empty():
                    continue
                if pc.mul(b, Element(m, m, fs)) == a:
                    return True
        return False

    pairs = 0
    leq: Dict[Tuple[Element, Element], bool] = {}
    for a in window:
        for b in window:
            pairs += 1
            got = nat_leq(ctx, a, b)
            leq[(a, b)] = got
            if got != oracle_leq(a, b):
                counterexamples.append({"kind": "order-oracle", "a": a, "b": b})
    for a in window:
        if not leq[(a, a)]:
            counterexamples.append({"kind": "order-reflexive", "a": a})
    for a in window:
        for b in window:
            if a != b and leq[(a, b)] and leq[(b, a)]:
                counterexamples.append({"kind": "order-antisymmetric", "a": a, "b": b})
    above: Dict[Element, Tuple[Element, ...]] = {
        a: tuple(b for b in window if leq[(a, b)]) for a in window
    }
    for a in window:
        for b in above[a]:
            for c in above[b]:
                if not leq[(a, c)]:
                    counterexamples.append(
                        {"kind": "order-transitive", "a": a, "b": b, "c": c}
                    )
    cone_checks = 0
    for a in window:
        cone = set(up_cone(ctx, a, k_bound))
        for b in window:
            if leq[(a, b)] and b not in cone:
                counterexamples.append({"kind": "cone-incomplete", "a": a, "b": b})
        cone_checks += 1
        for b in cone:
            if not nat_leq(ctx, a, b):
                counterexamples.append({"kind": "cone-unsound", "a": a, "b": b})
    return build_report(
        suite="order",
        context=ctx.describe(),
        params={"N": n, "k_bound": k_bound},
        counterexamples=counterexamples,
        counts={"window": len(window), "pairs": pairs, "cones": cone_checks},
    )


def simplicity_witness(ctx: AlgebraContext, s: Element, t: Element) -> Tuple[Element, Element]:
    """(u, v) with u*s*v = t, from the constant structure of inductive
    members: with c = min(s.fset), shifting s's set down by c gives [0),
    which absorbs in the middle of the sandwich.

    The equation is asserted before returning.
    """
    if not ctx.family.is_inductive:
        raise PreconditionError("simplicity witnesses need an inductive family")
    if is_zero(s) or is_zero(t):
        raise PreconditionError("simplicity witnesses are for nonzero elements")
    ctx.require(s)
    ctx.require(t)
    c = s.fset.minimum()
    u = Element(t.i, s.i + c, t.fset)
    v = Element(s.j + c, t.j, t.fset)
    assert multiply(ctx, multiply(ctx, u, s), v) == t
    return u, v


def simplicity_report(ctx: AlgebraContext, n: int, k_bound: int):
    """u*s*v = t for every window pair; the windowed restatement of the
    fact that any element generates everything as a two-sided factor."""
    if not ctx.family.is_inductive:
        raise PreconditionError("simplicity witnesses need an inductive family")
    window = enumerate_window(ctx, n, k_bound)
    counterexamples = []
    pairs = 0
    for s in window:
        for t in window:
            pairs += 1
            try:
                u, v = simplicity_witness(ctx, s, t)
            except AssertionError:
                counterexamples.append({"kind": "witness-equation", "s": s, "t": t})
                continue
            if multiply(ctx, multiply(ctx, u, s), v) != t:
                counterexamples.append({"kind": "witness-equation", "s": s, "t": t})
    return build_report(
        suite="simplicity",
        context=ctx.describe(),
        params={"N": n, "k_bound": k_bound},
        counterexamples=counterexamples,
        counts={"window": len(window), "pairs": pairs},
    )
