"""Scikit-learn style front door.

``NumericalRangeEstimator.fit`` does the expensive work once per matrix
(the adaptively refined boundary curve); ``transform`` maps outward-normal
angles to boundary points and ``predict`` to boundary-point verdicts, so
the analyzer slots into pipelines, cloning and parameter search like any
other estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_square_matrix
from .boundary import boundary_curve, contains as curve_contains, support_function
from .curvature import PointClassification, classify_point

__all__ = ["NumericalRangeEstimator"]


class NumericalRangeEstimator(BaseEstimator):
    """Boundary geometry and curvature verdicts for one complex matrix.

    Parameters
    ----------
    refine_tol : float
        Relative boundary refinement tolerance (of the matrix norm).
    initial_angles : int
        Number of equispaced outward normals the refinement starts from.
    max_depth : int
        Bisection depth cap per angular interval.
    num_scales : int
        Dyadic scale count for curvature estimation.
    divergence_growth, divergence_floor : float
        Thresholds declaring a ratio tail divergent.
    angular_tol : float
        Minimal normal-cone width that counts as a corner.

    Attributes
    ----------
    matrix_ : ndarray
        The validated fitted matrix.
    curve_ : BoundaryCurve
        Adaptively refined boundary of its numerical range.
    norm_ : float
        Spectral norm of the fitted matrix.
    """

    def __init__(self, refine_tol=1e-8, initial_angles=64, max_depth=40,
                 num_scales=24, divergence_growth=1.2, divergence_floor=1e3,
                 angular_tol=1e-6):
        self.refine_tol = refine_tol
        self.initial_angles = initial_angles
        self.max_depth = max_depth
        self.num_scales = num_scales
        self.divergence_growth = divergence_growth
        self.divergence_floor = divergence_floor
        self.angular_tol = angular_tol

    def fit(self, X, y=None):
        """Compute the boundary curve of W(X) for a square complex matrix."""
        a = as_square_matrix(X, name="X")
        self.matrix_ = a
        self.curve_ = boundary_curve(a, initial_angles=self.initial_angles,
                                     refine_tol=self.refine_tol,
                                     max_depth=self.max_depth)
        self.norm_ = self.curve_.matrix_norm
        return self

    def transform(self, thetas) -> np.ndarray:
        """Boundary points attained at the given outward-normal angles."""
        check_is_fitted(self, "curve_")
        th = np.atleast_1d(np.asarray(thetas, dtype=float))
        return np.array([support_function(self.matrix_, t).point for t in th])

    def predict(self, thetas) -> np.ndarray:
        """Boundary-point verdicts at the given outward-normal angles."""
        check_is_fitted(self, "curve_")
        th = np.atleast_1d(np.asarray(thetas, dtype=float))
        return np.array([self.classify(t).verdict for t in th], dtype=object)

    def classify(self, theta: float) -> PointClassification:
        """Full classification evidence at one outward-normal angle."""
        check_is_fitted(self, "curve_")
        return classify_point(self.curve_, float(theta),
                              num_scales=self.num_scales,
                              growth=self.divergence_growth,
                              floor=self.divergence_floor,
                              angular_tol=self.angular_tol)

    def contains(self, z: complex, tol: float | None = None) -> bool:
        """Membership of ``z`` in the closed numerical range."""
        check_is_fitted(self, "curve_")
        if tol is None:
            tol = 1e-8 * self.curve_.scale
        return curve_contains(self.curve_, z, tol)
