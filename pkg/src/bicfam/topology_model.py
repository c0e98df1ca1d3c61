"""Compact model of the cofinite topology at zero.

Every nonzero element is isolated; a neighborhood of zero is the whole
extended semigroup minus a finite set of nonzero elements, represented
by that excluded set alone.  Translation continuity then reduces to a
finite computation: to keep a * x inside U it suffices to exclude the
solve-fibers of the finitely many points outside U, and because fibers
are finite the shrunken neighborhood is again cofinite.  That fiber
union is also the largest possible choice, which the certification
suite checks point by point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import random
from typing import Dict, Iterable, List, Tuple

from .errors import PreconditionError, SetSyntaxError
from .core_semigroup import (
    ZERO,
    AlgebraContext,
    Element,
    ExtElement,
    element_sort_key,
    enumerate_window,
    is_zero,
    multiply,
    parse_element_at,
)
from .omega_sets import Cursor, OmegaSet
from .order_solve import LEFT, RIGHT, solve
from .reports import build_report


@dataclass(frozen=True)
class CofiniteNbhd:
    """S minus finitely many nonzero elements; always contains zero."""

    excluded: Tuple[Element, ...]

    def __post_init__(self):
        keys = [element_sort_key(x) for x in self.excluded]
        if any(is_zero(x) for x in self.excluded):
            raise PreconditionError("a neighborhood of zero cannot exclude zero")
        if keys != sorted(set(keys)):
            raise ValueError("excluded set must be sorted and deduplicated")

    @staticmethod
    def of(elements: Iterable[Element]) -> "CofiniteNbhd":
        uniq = sorted(set(elements), key=element_sort_key)
        return CofiniteNbhd(tuple(uniq))

    def contains(self, x: ExtElement) -> bool:
        return is_zero(x) or x not in self._excluded_set

    @cached_property
    def _excluded_set(self):
        return frozenset(self.excluded)

    def intersect(self, other: "CofiniteNbhd") -> "CofiniteNbhd":
        """Basis property: the meet just pools the exclusions."""
        return CofiniteNbhd.of(self.excluded + other.excluded)

    def __str__(self) -> str:
        return format_nbhd(self)


CofiniteNbhd.FULL_SPACE = CofiniteNbhd(())


def nbhd_diff(u: CofiniteNbhd, v: CofiniteNbhd) -> Tuple[Element, ...]:
    """U minus V as a finite set: exactly the points V excludes and U
    does not.  Finiteness is structural, nothing to search."""
    keep = u._excluded_set
    return tuple(x for x in v.excluded if x not in keep)


def format_nbhd(u: CofiniteNbhd) -> str:
    inner = ", ".join(str(x) for x in u.excluded)
    return f"cofinite ~ {{{inner}}}"


def parse_nbhd(text: str) -> CofiniteNbhd:
    """`cofinite ~ {elem, elem, ...}`; elements may repeat, order free."""
    cur = Cursor(text)
    cur.skip_ws()
    if not cur.text[cur.pos :].startswith("cofinite"):
        raise SetSyntaxError("expected 'cofinite'", cur.pos)
    cur.pos += len("cofinite")
    cur.expect("~")
    cur.expect("{")
    elements: List[Element] = []
    if cur.peek() != "}":
        while True:
            x = parse_element_at(cur)
            if is_zero(x):
                raise SetSyntaxError("zero cannot be excluded", cur.pos)
            elements.append(x)
            if cur.peek() != ",":
                break
            cur.expect(",")
    cur.expect("}")
    cur.expect_end()
    return CofiniteNbhd.of(elements)


def shrink(ctx: AlgebraContext, side: str, a: Element, u: CofiniteNbhd) -> CofiniteNbhd:
    """The largest V with a*V inside U (side left; V*a for right).

    Exclude precisely the fibers of the excluded points: x survives in V
    exactly when a*x avoids every point outside U, and a*Zero = Zero is
    inside U for free.
    """
    if is_zero(a):
        raise PreconditionError("shrink needs a nonzero translation element")
    bad: List[Element] = []
    for b in u.excluded:
        for x in solve(ctx, side, a, b).solutions:
            bad.append(x)
    return CofiniteNbhd.of(bad)


def _sample_neighborhoods(
    ctx: AlgebraContext, window, max_excl: int, rng: random.Random
) -> List[CofiniteNbhd]:
    """The certification diet: the full space, every singleton, seeded
    random exclusion sets, and adversarial sets built from whole fibers."""
    samples = [CofiniteNbhd.FULL_SPACE]
    for w in window:
        samples.append(CofiniteNbhd.of([w]))
    pool = list(window)
    for _ in range(12):
        count = rng.randint(1, max(1, max_excl))
        samples.append(CofiniteNbhd.of(rng.sample(pool, min(count, len(pool)))))
    for _ in range(4):
        p = rng.choice(pool)
        q = rng.choice(pool)
        fiber = solve(ctx, rng.choice((LEFT, RIGHT)), p, q).solutions
        chosen = [x for x in fiber if not is_zero(x)][:max_excl]
        if chosen:
            samples.append(CofiniteNbhd.of(chosen))
    return samples


def certify_separate_continuity(
    ctx: AlgebraContext, n: int, k_bound: int, max_excl: int, seed: int = 0
):
    """For each window element a and sampled U: V = shrink(a, U) keeps
    a*V inside U (checked over a scan window reaching past every
    excluded coordinate), V excludes only points that genuinely leave U
    (maximality), and the separation facts hold: singletons isolate
    nonzero points and cofinite sets separate zero from them."""
    window = enumerate_window(ctx, n, k_bound)
    rng = random.Random(seed)
    samples = _sample_neighborhoods(ctx, window, max_excl, rng)
    extra = max(k_bound, n) + 1
    scan = enumerate_window(ctx, 3 * n + 2, k_bound + extra + n)
    counterexamples = []
    checked = 0
    maximality_checks = 0

    for side in (LEFT, RIGHT):
        for a in window:
            # group the scan window by image once per translation; an
            # escape is a scan point that maps outside U yet survives in V
            preimages: Dict[ExtElement, List[Element]] = {}
            for x in scan:
                img = multiply(ctx, a, x) if side == LEFT else multiply(ctx, x, a)
                preimages.setdefault(img, []).append(x)
            for u in samples:
                v = shrink(ctx, side, a, u)
                checked += 1
                for b in u.excluded:
                    for x in preimages.get(b, ()):
                        if v.contains(x):
                            counterexamples.append(
                                {"kind": "escape", "side": side, "a": a, "U": u, "x": x}
                            )
                for x in v.excluded:
                    maximality_checks += 1
                    img = multiply(ctx, a, x) if side == LEFT else multiply(ctx, x, a)
                    if u.contains(img):
                        counterexamples.append(
                            {"kind": "not-maximal", "side": side, "a": a, "U": u, "x": x}
                        )

    separations = 0
    for idx, x in enumerate(window):
        u = CofiniteNbhd.of([x])
        separations += 1
        if u.contains(x) or not u.contains(ZERO):
            counterexamples.append({"kind": "zero-separation", "x": x})
        for y in window[idx + 1 :]:
            if not (u.contains(y)):
                counterexamples.append({"kind": "point-separation", "x": x, "y": y})

    return build_report(
        suite="topology",
        context=ctx.describe(),
        params={"N": n, "k_bound": k_bound, "max_excl": max_excl, "seed": seed},
        counterexamples=counterexamples,
        counts={
            "window": len(window),
            "neighborhoods": len(samples),
            "shrinks": checked,
            "maximality_checks": maximality_checks,
            "separations": separations,
        },
    )


def proof_identity_suite(ctx: AlgebraContext, bounds: int):
    """The tail-arithmetic identities the dichotomy arguments lean on,
    instantiated for all parameters up to the bound:

      append-unit:      (i,j,[k)) * (0,1,[0))              = (i,j+1,[k))
      absorb-high:      (1,1,[k+1)) * (0,p,[k))            = (1,1+p,[k+1))
      absorb-low:       (1,1,[0)) * (0,p,[k))              = (1,1+p,[k-1)), k >= 1
      conjugate-shift:  (0,1,[0)) * (m+1,n+1,[k)) * (1,0,[0)) = (m,n,[k))
    """
    if bounds < 1:
        raise PreconditionError("bounds must be at least 1")
    family = ctx.family
    if not family.is_inductive:
        raise PreconditionError("the identity suite needs an inductive family")
    needed = [OmegaSet.tail_from(k) for k in range(bounds + 2)]
    if not family.all_tails:
        missing = [t for t in needed if not family.contains(t)]
        if missing:
            raise PreconditionError(
                f"identity suite with bounds {bounds} needs tails up to "
                f"[{bounds + 1}); missing {missing[0]}"
            )
    unit_up = Element(0, 1, OmegaSet.tail_from(0))
    unit_down = Element(1, 0, OmegaSet.tail_from(0))
    counterexamples = []
    instances = 0

    for i in range(bounds + 1):
        for j in range(bounds + 1):
            for k in range(bounds + 1):
                instances += 1
                lhs = multiply(ctx, Element(i, j, OmegaSet.tail_from(k)), unit_up)
                if lhs != Element(i, j + 1, OmegaSet.tail_from(k)):
                    counterexamples.append(
                        {"kind": "append-unit", "i": i, "j": j, "k": k, "got": lhs}
                    )

    for p in range(bounds + 1):
        for k in range(bounds + 1):
            instances += 1
            lhs = multiply(
                ctx,
                Element(1, 1, OmegaSet.tail_from(k + 1)),
                Element(0, p, OmegaSet.tail_from(k)),
            )
            if lhs != Element(1, 1 + p, OmegaSet.tail_from(k + 1)):
                counterexamples.append({"kind": "absorb-high", "p": p, "k": k, "got": lhs})

    for p in range(bounds + 1):
        for k in range(1, bounds + 1):
            instances += 1
            lhs = multiply(
                ctx,
                Element(1, 1, OmegaSet.tail_from(0)),
                Element(0, p, OmegaSet.tail_from(k)),
            )
            if lhs != Element(1, 1 + p, OmegaSet.tail_from(k - 1)):
                counterexamples.append({"kind": "absorb-low", "p": p, "k": k, "got": lhs})

    for m in range(bounds + 1):
        for nn in range(bounds + 1):
            for k in range(bounds + 1):
                instances += 1
                mid = Element(m + 1, nn + 1, OmegaSet.tail_from(k))
                lhs = multiply(ctx, multiply(ctx, unit_up, mid), unit_down)
                if lhs != Element(m, nn, OmegaSet.tail_from(k)):
                    counterexamples.append(
                        {"kind": "conjugate-shift", "m": m, "n": nn, "k": k, "got": lhs}
                    )

    return build_report(
        suite="identities",
        context=ctx.describe(),
        params={"bounds": bounds},
        counterexamples=counterexamples,
        counts={"instances": instances},
    )
