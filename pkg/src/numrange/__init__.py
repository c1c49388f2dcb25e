"""Numerical range toolkit for dense complex matrices.

Boundary curves of W(A) via the support function, lower/upper curvature
estimates at boundary points, corner detection, compression ellipses and
executable finite-dimensional checks of the classical spectral-inclusion
results, plus a scikit-learn style estimator facade and a CLI.
"""

from .boundary import (
    BoundaryCurve,
    BoundarySample,
    Ellipse,
    boundary_curve,
    compression_ellipse,
    contains,
    elliptical_range,
    rayleigh,
    refine_near,
    support_function,
    support_margin,
    support_values,
)
from .config import RunConfig
from .curvature import (
    VERDICT_CORNER,
    VERDICT_INFINITE,
    VERDICT_ROUND,
    VERDICT_UPPER_ONLY,
    CurvatureEstimate,
    NormalizedBoundary,
    PointClassification,
    classify_normalized,
    classify_point,
    curvature_estimate,
    detect_corner,
    epigraph_body,
    epigraph_exact_ratio,
    normalize_at,
)
from .errors import (
    NonConvergenceError,
    NotOnBoundaryError,
    ResolutionError,
    SchemaError,
    ValidationError,
)
from .estimator import NumericalRangeEstimator
from .linalg import (
    compress,
    hermitian_extremal_eig,
    hermitian_part,
    min_residual_witness,
    spectrum,
)
from .matrixio import MatrixDocument, parse_matrix, serialize_matrix
from .theorems import (
    CheckedPoint,
    EllipseCheck,
    TheoremReport,
    ellipse_characterization_check,
    ellipse_suite_report,
    find_corners,
    generator_suite,
    verify_donoghue,
    verify_hubner_upper,
    verify_thm3_corollary,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCurve",
    "BoundarySample",
    "CheckedPoint",
    "CurvatureEstimate",
    "Ellipse",
    "EllipseCheck",
    "MatrixDocument",
    "NonConvergenceError",
    "NormalizedBoundary",
    "NotOnBoundaryError",
    "NumericalRangeEstimator",
    "PointClassification",
    "ResolutionError",
    "RunConfig",
    "SchemaError",
    "TheoremReport",
    "ValidationError",
    "VERDICT_CORNER",
    "VERDICT_INFINITE",
    "VERDICT_ROUND",
    "VERDICT_UPPER_ONLY",
    "boundary_curve",
    "classify_normalized",
    "classify_point",
    "compress",
    "compression_ellipse",
    "contains",
    "curvature_estimate",
    "detect_corner",
    "ellipse_characterization_check",
    "ellipse_suite_report",
    "elliptical_range",
    "epigraph_body",
    "epigraph_exact_ratio",
    "find_corners",
    "generator_suite",
    "hermitian_extremal_eig",
    "hermitian_part",
    "min_residual_witness",
    "normalize_at",
    "parse_matrix",
    "rayleigh",
    "refine_near",
    "serialize_matrix",
    "spectrum",
    "support_function",
    "support_margin",
    "support_values",
    "verify_donoghue",
    "verify_hubner_upper",
    "verify_thm3_corollary",
]
