"""Exact sums of cubes of integer polynomials."""

from ._cubesum import (
    BudgetExceeded,
    CubesumError,
    InexactDivision,
    NoFourCubeFamilyMatch,
    ParseError,
    Polynomial,
    Representation,
    ResidueMismatch,
    UnboundVariable,
    UnknownFamily,
    UnknownIdentity,
    catalog_entry,
    catalog_fixed,
    derivation_families,
    derive,
    describe,
    family_ids,
    five_cubes_residue,
    fixed_identity_ids,
    four_cubes_sum_pq,
    four_cubes_two_diff,
    normalize,
    one_bivariate,
    parse,
    represent,
    scale,
    search,
    spot_check,
    two_trivariate,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
