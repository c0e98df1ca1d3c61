"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: syntax errors exit 2, precondition
errors exit 3, resource caps exit 4.
"""


class SetSyntaxError(ValueError):
    """Malformed literal; carries the offset of the offending character."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class OutsideFamilyError(PreconditionError):
    """An element's set component does not belong to the ambient family."""


class NoIdentityError(PreconditionError):
    """The context cannot certify an identity element ([0) is missing)."""


class FamilyNotClosedError(RuntimeError):
    """A product escaped the family: the context is corrupted."""


class FamilySizeCapError(RuntimeError):
    """Closure computation exceeded the configured family-size cap."""

    def __init__(self, cap: int):
        super().__init__(f"family size cap of {cap} exceeded")
        self.cap = cap
