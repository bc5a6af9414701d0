"""The two explicit projective families of contracted Kummer-type surfaces.

Class 4: inseparable double covers w^2 = H(x, y) of P^1 x P^1 with
H = x^4 y + x y^4 + h30 x^3 + h21 x^2 y + h12 x y^2 + h03 y^3 + h11 xy.
Class 2: quasi-elliptic Weierstrass forms y^2 = H(x, t) with
H = x^3 + h11 x t + h12 x t^2 + h03 t^3 + h05 t^5 + t^9.

The modules classify singular configurations by coefficients, verify them
against brute-force point enumeration with exact local colengths, build
the covering derivation on the square-root coordinate plane, and decide
the derivation-classification conditions.
"""

from .spec import (
    BRANCHES,
    BRANCH_PROFILES,
    SurfaceError,
    SurfaceSpec,
    classify_by_coefficients,
    sample_branch_spec,
    translate_to_origin,
    normalize_spec,
    z1z2_parametrization_check,
)
from .points import (
    PointRecord,
    SingularityReport,
    classify_full,
    local_colength,
    singular_points,
)
from .derivations import (
    DerivationSpec,
    classify_derivations,
    covering_derivation,
    fixed_locus_subgroup_check,
)

__all__ = [
    "BRANCHES", "BRANCH_PROFILES", "SurfaceError", "SurfaceSpec",
    "classify_by_coefficients", "sample_branch_spec", "translate_to_origin",
    "normalize_spec", "z1z2_parametrization_check",
    "PointRecord", "SingularityReport", "classify_full", "local_colength",
    "singular_points",
    "DerivationSpec", "classify_derivations", "covering_derivation",
    "fixed_locus_subgroup_check",
]
