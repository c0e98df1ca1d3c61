"""Exact computations with bicyclic-style triples over families of
eventually-constant subsets of omega: multiplication, the natural
partial order, finite-fiber equation solving, family closure, and a
compact cofinite-topology model."""

from .core_semigroup import (
    ZERO,
    AlgebraContext,
    Element,
    ExtElement,
    Zero,
    enumerate_window,
    identity_of,
    inverse,
    is_idempotent,
    is_zero,
    multiply,
    parse_element,
    product,
)
from .errors import (
    FamilyNotClosedError,
    FamilySizeCapError,
    NoIdentityError,
    OutsideFamilyError,
    PreconditionError,
    SetSyntaxError,
)
from .families import (
    Family,
    adjoin_empty,
    build_family,
    is_omega_closed,
    normalize_family,
    omega_closure,
    resolve_family,
)
from .omega_sets import EMPTY, FULL, OmegaSet, format_set, parse_set
from .order_solve import (
    SolutionSet,
    nat_leq,
    simplicity_witness,
    solve,
    up_cone,
)
from .reports import CheckReport
from .topology_model import CofiniteNbhd, nbhd_diff, parse_nbhd, shrink

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "CheckReport",
    "CofiniteNbhd",
    "EMPTY",
    "Element",
    "ExtElement",
    "FULL",
    "Family",
    "FamilyNotClosedError",
    "FamilySizeCapError",
    "NoIdentityError",
    "OmegaSet",
    "OutsideFamilyError",
    "PreconditionError",
    "SetSyntaxError",
    "SolutionSet",
    "ZERO",
    "Zero",
    "adjoin_empty",
    "build_family",
    "enumerate_window",
    "format_set",
    "identity_of",
    "inverse",
    "is_idempotent",
    "is_omega_closed",
    "is_zero",
    "multiply",
    "nat_leq",
    "nbhd_diff",
    "normalize_family",
    "omega_closure",
    "parse_element",
    "parse_nbhd",
    "parse_set",
    "product",
    "resolve_family",
    "shrink",
    "simplicity_witness",
    "solve",
    "up_cone",
]
