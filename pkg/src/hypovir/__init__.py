"""Exact Virasoro vacuum-module calculus with hypotrochoid deformation geometry."""

from .compositions import c_coeff, c_coeff_alt, enumerate_compositions
from .correlators import Insertion, ope_Tk1, permutation_invariance, sphere_correlator
from .curves import (
    HypotrochoidSpec,
    cusp_threshold,
    export_curve,
    map_eval,
    sample_curve,
    simplicity_check,
)
from .exact import CPoly, CRat
from .expansion import (
    AnalyticFunctional,
    expansion_coefficient,
    expansion_residual,
    fourier_extract,
    invert_map,
)
from .maps import MapExpr, one_point_Tk1, schwarzian, transformation_check
from .multipoint import MPoly, PointRational
from .operators import (
    OperatorSum,
    composition_check,
    derive_box,
    derive_tbox,
    specialize_hypotrochoid,
    tbox_closed,
    witt_normal_form,
)
from .virasoro import (
    DescendantSymbol,
    PBWVector,
    descendant,
    hypotrochoid_basis_solve,
    kappa_c_map,
    normal_order,
    shapovalov,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunctional",
    "CPoly",
    "CRat",
    "DescendantSymbol",
    "HypotrochoidSpec",
    "Insertion",
    "MPoly",
    "MapExpr",
    "OperatorSum",
    "PBWVector",
    "PointRational",
    "c_coeff",
    "c_coeff_alt",
    "composition_check",
    "cusp_threshold",
    "derive_box",
    "derive_tbox",
    "descendant",
    "enumerate_compositions",
    "expansion_coefficient",
    "expansion_residual",
    "export_curve",
    "fourier_extract",
    "hypotrochoid_basis_solve",
    "invert_map",
    "kappa_c_map",
    "map_eval",
    "normal_order",
    "one_point_Tk1",
    "ope_Tk1",
    "permutation_invariance",
    "sample_curve",
    "schwarzian",
    "shapovalov",
    "simplicity_check",
    "specialize_hypotrochoid",
    "sphere_correlator",
    "tbox_closed",
    "transformation_check",
    "witt_normal_form",
    "__version__",
]
