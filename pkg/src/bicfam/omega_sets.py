"""Exact arithmetic on eventually-constant subsets of omega.

A set here is a subset of the natural numbers whose characteristic
function is constant from some index on: a finite bit prefix plus one
tail bit.  This class is closed under shifting and intersection and
contains every inductive subset (the nonempty ones are exactly the
tails [k) = {k, k+1, ...}), which is all the ambient construction ever
touches.

Canonical form: the prefix never ends in a bit equal to the tail bit,
so structural equality coincides with set equality.

Text literals follow the grammar

    '{' n (',' n)* '}' ( '+[' k ')' )?  |  '[' k ')'  |  '{}'

whitespace-insensitive, decimal integers only.  ``format_set`` always
emits the shortest canonical literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import PreconditionError, SetSyntaxError


@dataclass(frozen=True)
class OmegaSet:
    """Eventually-constant subset of omega: ``mask`` holds membership of
    0..size-1, ``tail`` membership of everything from ``size`` on."""

    mask: int
    size: int
    tail: bool

    def __post_init__(self):
        if self.size < 0 or self.mask < 0 or self.mask >> self.size:
            raise ValueError("prefix mask wider than its declared size")
        if self.size and ((self.mask >> (self.size - 1)) & 1) == int(self.tail):
            raise ValueError("non-canonical: prefix ends in the tail bit")

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_bits(mask: int, size: int, tail: bool) -> "OmegaSet":
        """Canonicalize an arbitrary prefix/tail description."""
        mask &= (1 << size) - 1
        t = int(bool(tail))
        while size and ((mask >> (size - 1)) & 1) == t:
            size -= 1
        mask &= (1 << size) - 1
        return OmegaSet(mask, size, bool(tail))

    @staticmethod
    def from_members(members: Iterable[int], tail_start: Optional[int] = None) -> "OmegaSet":
        """Finite set of the given members, optionally united with [tail_start)."""
        mask = 0
        top = -1
        for m in members:
            if m < 0:
                raise ValueError("negative member")
            mask |= 1 << m
            top = max(top, m)
        if tail_start is None:
            return OmegaSet.from_bits(mask, top + 1, False)
        if tail_start < 0:
            raise ValueError("negative tail start")
        size = max(top + 1, tail_start)
        mask |= ((1 << size) - 1) & ~((1 << tail_start) - 1)
        return OmegaSet.from_bits(mask, size, True)

    @staticmethod
    def tail_from(k: int) -> "OmegaSet":
        """The tail [k) = {k, k+1, ...}."""
        if k < 0:
            raise ValueError("negative tail start")
        return OmegaSet(0, k, True)

    # -- queries -----------------------------------------------------

    def __contains__(self, n: int) -> bool:
        if n < 0:
            raise ValueError("membership is defined on omega only")
        if n < self.size:
            return bool((self.mask >> n) & 1)
        return self.tail

    def is_empty(self) -> bool:
        return not self.mask and not self.tail

    def minimum(self) -> int:
        """Least member; for a nonempty inductive set F, F = [minimum())."""
        if self.mask:
            return (self.mask & -self.mask).bit_length() - 1
        if self.tail:
            return self.size
        raise PreconditionError("minimum of the empty set")

    def is_inductive(self) -> bool:
        """True iff n in F implies n+1 in F.

        Computed by the direct successor scan; asserted against the
        equivalent shift characterization F subset-of shift(F, -1).
        """
        if self.size:
            succ = (self.mask >> 1) | (int(self.tail) << (self.size - 1))
            direct = not (self.mask & ~succ)
        else:
            direct = True
        assert direct == self.issubset(self.shift(-1))
        return direct

    def issubset(self, other: "OmegaSet") -> bool:
        if self.tail and not other.tail:
            return False
        s = max(self.size, other.size)
        return not (_extend(self, s) & ~_extend(other, s))

    # -- arithmetic --------------------------------------------------

    def shift(self, d: int) -> "OmegaSet":
        """{d + k : k in F} intersected with omega; d may be negative."""
        if d >= 0:
            return OmegaSet.from_bits(self.mask << d, self.size + d, self.tail)
        u = -d
        return OmegaSet.from_bits(self.mask >> u, max(self.size - u, 0), self.tail)

    def intersect(self, other: "OmegaSet") -> "OmegaSet":
        s = max(self.size, other.size)
        return OmegaSet.from_bits(
            _extend(self, s) & _extend(other, s), s, self.tail and other.tail
        )

    __and__ = intersect

    def meet_shift(self, n: int, other: "OmegaSet") -> "OmegaSet":
        """self intersected with shift(other, -n); the closure step."""
        if n < 0:
            raise PreconditionError("meet_shift needs n >= 0")
        return self.intersect(other.shift(-n))

    # -- text --------------------------------------------------------

    def __str__(self) -> str:
        return format_set(self)

    def __repr__(self) -> str:
        return f"OmegaSet[{format_set(self)}]"


def _extend(fset: OmegaSet, size: int) -> int:
    """Prefix mask of the first ``size`` positions (size >= fset.size)."""
    mask = fset.mask
    if fset.tail:
        mask |= ((1 << size) - 1) & ~((1 << fset.size) - 1)
    return mask


EMPTY = OmegaSet(0, 0, False)
FULL = OmegaSet(0, 0, True)


def format_set(fset: OmegaSet) -> str:
    """Shortest canonical literal: finite part ascending, tail only when set."""
    members = ",".join(str(n) for n in range(fset.size) if (fset.mask >> n) & 1)
    if fset.tail:
        tail_txt = f"[{fset.size})"
        return f"{{{members}}}+{tail_txt}" if members else tail_txt
    return f"{{{members}}}"


class Cursor:
    """Minimal recursive-descent helper shared by the literal parsers."""

    __slots__ = ("text", "pos")

    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise SetSyntaxError(f"expected '{ch}'", self.pos)
        self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect_end(self) -> None:
        if not self.at_end():
            raise SetSyntaxError("unexpected trailing text", self.pos)

    def parse_nat(self) -> int:
        if self.peek() == "-":
            raise SetSyntaxError("negative integers are not allowed", self.pos)
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise SetSyntaxError("expected a decimal integer", self.pos)
        return int(self.text[start : self.pos])


def parse_set_at(cur: Cursor) -> OmegaSet:
    """Parse one SetLiteral starting at the cursor; canonicalizes."""
    ch = cur.peek()
    if ch == "[":
        cur.expect("[")
        k = cur.parse_nat()
        cur.expect(")")
        return OmegaSet.tail_from(k)
    if ch == "{":
        cur.expect("{")
        if cur.peek() == "}":
            cur.expect("}")
            return EMPTY
        members = [cur.parse_nat()]
        while cur.peek() == ",":
            cur.expect(",")
            members.append(cur.parse_nat())
        cur.expect("}")
        if cur.peek() == "+":
            cur.expect("+")
            cur.expect("[")
            k = cur.parse_nat()
            cur.expect(")")
            return OmegaSet.from_members(members, k)
        return OmegaSet.from_members(members)
    raise SetSyntaxError("expected a set literal", cur.pos)


def parse_set(text: str) -> OmegaSet:
    cur = Cursor(text)
    fset = parse_set_at(cur)
    cur.expect_end()
    return fset
