"""Gauge functionals, oriented distance and K-steepest descent for convex cones."""

from .cones import (
    ConeClassification,
    Lorentz,
    Orthant,
    PolyhedralCone,
    classify_dual,
    contains_minus_k,
    dual_score,
    extreme_rays,
    has_nonempty_interior,
    interior_point,
    is_pointed,
    polar,
    project_onto_minus_k,
    same_rays,
)
from .descent import (
    DescentConfig,
    DescentTrace,
    Termination,
    VectorObjective,
    armijo_linesearch,
    check_jacobian,
    solve,
    steepest_descent_direction,
)
from .exceptions import ConeError, ConvergenceError, DimensionError, UnsupportedError
from .gauge import (
    FiniteGauge,
    GaugeReport,
    OrientedDistanceGauge,
    builtin_gauges,
    canonical_gauge,
    classify_by_sign,
    dual_sphere_value,
    evaluate,
    gauge_from_unit_dual_sphere,
    gauge_values,
    minimal_generating_subset,
    oriented_distance,
    verify_gauge_axioms,
)
from .simplex import SimplexWeights, simplex_qp

__version__ = "0.1.0"
