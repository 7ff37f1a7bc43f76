from .conormal import DualityError, bidual_check, conormal_ideal, dual_variety
from .curves import (BranchData, CurveError, ProjectionData, double_cover_branch, osculating_pencil,
                     projection_branch, rnc_projection_r3, wronskian_branch)
from .discriminant import (DiscriminantReport, FinitenessViolation, JumpingSetReport, UnsupportedSource,
                           codegree, discriminant, hyperplane_components, incidence_ideal, jumping_sets,
                           strata, strata_cover)
from .linsys import (BasePointError, LinearSystem, LinearSystemError, format_linear_system, image_ideal,
                     parse_linear_system, symmetric_weights)
from .pencil import PencilError, PencilReport, pencil_verify
from .singular import (MilnorDatum, SingularLocus, dehomogenize_at, hessian_nondegenerate, milnor,
                       milnor_at, singular_points)

__all__ = [
    "DualityError", "bidual_check", "conormal_ideal", "dual_variety",
    "BranchData", "CurveError", "ProjectionData", "double_cover_branch", "osculating_pencil",
    "projection_branch", "rnc_projection_r3", "wronskian_branch",
    "DiscriminantReport", "FinitenessViolation", "JumpingSetReport", "UnsupportedSource", "codegree",
    "discriminant", "hyperplane_components", "incidence_ideal", "jumping_sets", "strata", "strata_cover",
    "BasePointError", "LinearSystem", "LinearSystemError", "format_linear_system", "image_ideal",
    "parse_linear_system", "symmetric_weights",
    "PencilError", "PencilReport", "pencil_verify",
    "MilnorDatum", "SingularLocus", "dehomogenize_at", "hessian_nondegenerate", "milnor", "milnor_at",
    "singular_points",
]
