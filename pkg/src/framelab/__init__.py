"""Worst-case erasure analysis for finite frames and their duals."""

from .constructions import (
    DualParameterization,
    dual_from_parameters,
    dual_parameterization,
    example_frame,
    harmonic_frame,
    onb_extension_pair,
    random_dual_pair,
    random_frame,
    two_uniform_pair,
)
from .erasure import (
    ErasureSet,
    ErrorOperator,
    MeasureKind,
    MeasureReport,
    complex_sqrt_branch,
    enumerate_erasures,
    error_operator,
    frobenius_norm,
    numerical_radius,
    spectral_radius,
    worst_case,
)
from .exceptions import (
    ComputationError,
    DualityError,
    EnumerationCapError,
    FrameLabError,
    NotAFrameError,
)
from .frame import (
    DualPair,
    Frame,
    FrameProperties,
    canonical_dual,
    classify_frame,
    classify_pair,
    frame_bounds,
    frame_operator,
    inv_sqrt_frame,
    make_dual_pair,
)
from .optimality import (
    AveragingInstance,
    MembershipVerdict,
    OptimalityClass,
    averaging_lower_bound,
    check_membership,
    relations_report,
    theoretical_optimum,
    transform_invertible,
    transform_unitary,
)
from .search import SearchConfig, SearchResult, search

__version__ = "0.1.0"
