"""Pedal, anti-pedal and inversion curves of conics with respect to the origin."""

from .conic import (
    Conic,
    ConicClass,
    ConicKind,
    asymptotic_directions,
    axis_direction,
    classify,
    invariants,
    normal_form,
    parametrize,
    tangent_line,
)
from .errors import (
    ConicPedalError,
    DomainError,
    EmptyCurveError,
    InputError,
    NotParametrizableError,
    OriginInversionError,
    ReducibleConicError,
    SilhouettePointError,
    SingularPointError,
    TheoremViolation,
)
from .frontal import (
    LegendrianCurve,
    antipedal_frontal,
    find_singular_points,
    frame,
    inversion_map,
    ordinary_cusp_test,
    pedal_frontal,
    primitive_frontal,
)
from .limacon import (
    CircleSpec,
    classify_limacon,
    limacon_implicit,
    limacon_inversion,
    limacon_parametric,
    rotation_reduction,
)
from .parametric import ParametricCurve
from .pedal_ops import (
    antipedal_curve,
    inversion_curve,
    pedal_curve,
    pedal_foot,
    verify_invariant_identities,
)
from .poly2 import BivariatePoly, evaluate, invert_poly, proportional, strip_circle_factor
from .render import Scene, emit_csv, emit_svg, rasterize_implicit, sample_parametric
from .singularity import (
    SingularityKind,
    SingularityReport,
    classify_origin,
    inversion_origin_trichotomy,
    pedal_origin_trichotomy,
)

__version__ = "0.1.0"
