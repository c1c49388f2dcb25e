import numpy as np
import pytest

from numrange.boundary import boundary_curve, refine_near
from numrange.curvature import (
    VERDICT_CORNER,
    VERDICT_ROUND,
    VERDICT_UPPER_ONLY,
    classify_normalized,
    classify_point,
    curvature_estimate,
    detect_corner,
    epigraph_body,
    epigraph_exact_ratio,
    normalize_at,
)
from numrange.errors import (
    NotOnBoundaryError,
    ResolutionError,
    ValidationError,
)
from numrange.theorems import find_corners

JORDAN2 = np.array([[0, 1], [0, 0]], dtype=complex)
TRIANGLE = np.diag([1.0, 1j, -1.0]).astype(complex)
SEGMENT = np.diag([0.0, 1.0]).astype(complex)


def disk_curve(radius=0.5, refine_tol=1e-8):
    return boundary_curve(np.array([[0, 2 * radius], [0, 0]], dtype=complex),
                          refine_tol=refine_tol)


class TestNormalizeAt:
    def test_circle_bottom_matches_geometry(self):
        # |z| = 1/2 normalized at the bottom point: circle centered at i/2, so
        # the near branch satisfies y = 1/2 - sqrt(1/4 - x^2)
        curve = disk_curve()
        nb = normalize_at(curve, -np.pi / 2)
        assert float(np.max(np.abs(np.abs(nb.xs + 1j * (nb.ys - 0.5)) - 0.5))) <= 1e-8
        near = (np.abs(nb.xs) <= 0.35) & (nb.ys <= 0.5)
        expected = 0.5 - np.sqrt(0.25 - nb.xs[near] ** 2)
        assert float(np.max(np.abs(nb.ys[near] - expected))) <= 1e-8

    def test_segment_normal_to_supporting_line(self):
        # at theta0 = 0 the supporting line of [0, 1] at the base point 1 is
        # vertical, so the segment maps onto the inward ray x = 0, 0 <= y <= 1
        curve = boundary_curve(SEGMENT)
        nb = normalize_at(curve, 0.0)
        assert nb.base_point == pytest.approx(1.0 + 0.0j, abs=1e-12)
        assert float(np.max(np.abs(nb.xs))) <= 1e-9
        assert float(np.min(nb.ys)) >= -1e-9
        assert float(np.max(nb.ys)) == pytest.approx(1.0, abs=1e-9)

    def test_segment_along_supporting_line(self):
        # at theta0 = pi/2 the segment lies on its own supporting line and
        # maps onto a flat one-sided ray (y = 0) from the base point 1
        curve = boundary_curve(SEGMENT)
        nb = normalize_at(curve, np.pi / 2, base_point=1.0)
        assert np.all(nb.xs >= -1e-9)
        assert float(np.max(nb.xs)) == pytest.approx(1.0, abs=1e-9)
        assert float(np.max(np.abs(nb.ys))) <= 1e-9

    def test_base_point_at_origin(self):
        curve = boundary_curve(TRIANGLE)
        nb = normalize_at(curve, 0.7)
        i = int(np.argmin(np.abs(nb.xs) + np.abs(nb.ys)))
        assert abs(nb.xs[i]) <= 1e-12 and abs(nb.ys[i]) <= 1e-12

    def test_body_in_upper_half_plane(self):
        rng = np.random.default_rng(41)
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        curve = boundary_curve(a, refine_tol=1e-6)
        for theta in (0.0, 1.1, 4.0):
            nb = normalize_at(curve, theta)
            assert float(np.min(nb.ys)) >= -1e-9 * nb.scale

    def test_explicit_base_point_must_be_attained(self):
        curve = boundary_curve(TRIANGLE)
        with pytest.raises(NotOnBoundaryError):
            normalize_at(curve, np.pi / 4, base_point=0.2 + 0.1j)


class TestEpigraphBody:
    def test_sample_arithmetic(self):
        body = epigraph_body(41)
        table = {float(x): float(y) for x, y in zip(body.xs, body.ys)}
        assert table[0.25] == pytest.approx(0.125, abs=1e-15)   # x^(3/2)
        assert table[-0.5] == pytest.approx(0.0625, abs=1e-15)  # x^4
        assert table[0.0] == 0.0
        assert epigraph_exact_ratio(0.25) == pytest.approx(2.0, abs=1e-12)
        assert epigraph_exact_ratio(-0.5) == pytest.approx(0.25, abs=1e-12)

    def test_minimum_size_enforced(self):
        with pytest.raises(ValidationError):
            epigraph_body(8)

    def test_estimator_matches_exact_oracle(self):
        scales = 20
        body = epigraph_body(2 * (scales + 2) + 1)
        est = curvature_estimate(body, scales)
        assert est.scales.shape[0] == scales
        for k in range(scales):
            x = est.scales[k]
            assert est.right_x[k] == pytest.approx(x, abs=0.0)
            assert abs(est.right_ratios[k] - 1.0 / np.sqrt(x)) <= 1e-10
            assert abs(est.left_ratios[k] - x * x) <= 1e-10

    def test_upper_only_classification(self):
        body = epigraph_body(2 * 22 + 1)
        verdict, est = classify_normalized(body, 20)
        assert verdict == VERDICT_UPPER_ONLY
        assert est.gamma_u_infinite and not est.gamma_l_infinite
        assert est.gamma_l_est <= 1e-9
        assert est.right_diverged and not est.left_diverged
        assert est.right_tail_exponent == pytest.approx(0.5, abs=1e-9)


class TestCurvatureEstimate:
    def test_circle_ratio_limit(self):
        curve = disk_curve()
        nb = normalize_at(refine_near(curve, 0.9, levels=30), 0.9)
        est = curvature_estimate(nb, 24)
        assert est.gamma_l_est == pytest.approx(1.0, rel=0.05)
        assert est.gamma_u_est == pytest.approx(1.0, rel=0.05)

    def test_circle_calibration_radii(self):
        for r in (0.25, 0.5, 1.0, 2.0):
            curve = disk_curve(radius=r)
            for theta in np.arange(8) * np.pi / 4:
                cls = classify_point(curve, theta)
                assert cls.verdict == VERDICT_ROUND
                assert cls.estimate.gamma_l_est == pytest.approx(1 / (2 * r), rel=0.05)
                assert cls.estimate.gamma_u_est == pytest.approx(1 / (2 * r), rel=0.05)

    def test_flat_edge_midpoint_ratios_vanish(self):
        curve = boundary_curve(TRIANGLE)
        midpoint = (1.0 + 1j) / 2.0
        nb = normalize_at(refine_near(curve, np.pi / 4, levels=30),
                          np.pi / 4, base_point=midpoint)
        est = curvature_estimate(nb, 24)
        assert est.gamma_l_est == 0.0
        assert est.gamma_u_est == 0.0

    def test_insufficient_resolution_raises(self):
        xs = np.array([-0.5, 0.0, 0.5])
        ys = np.array([0.3, 0.0, 0.3])
        body = epigraph_body(17)
        sparse = type(body)(base_point=0j, base_theta=-np.pi / 2, xs=xs, ys=ys,
                            scale=1.0, noise_floor=0.0)
        with pytest.raises(ResolutionError):
            curvature_estimate(sparse, 24)


class TestDetectCorner:
    def test_triangle_vertex_widths(self):
        # normal cone widths of conv{1, i, -1}: 3pi/4 at 1 and -1 (interior
        # angle pi/4), pi/2 at i (the right angle); they sum to 2pi
        curve = boundary_curve(TRIANGLE)
        for lam, width in ((1.0, 0.75 * np.pi), (1j, 0.5 * np.pi),
                           (-1.0, 0.75 * np.pi)):
            is_corner, measured = detect_corner(curve, lam, 1e-7)
            assert is_corner
            assert measured == pytest.approx(width, abs=1e-3)

    def test_disk_has_no_corner(self):
        curve = disk_curve()
        s = curve.samples[len(curve.samples) // 3]
        is_corner, width = detect_corner(curve, s.point, 1e-7 * curve.scale)
        assert not is_corner
        assert width <= 1e-3

    def test_segment_endpoint_width_pi(self):
        curve = boundary_curve(SEGMENT)
        is_corner, width = detect_corner(curve, 1.0, 1e-7)
        assert is_corner
        assert width == pytest.approx(np.pi, abs=1e-3)

    def test_regular_pentagon(self):
        a = np.diag(np.exp(2j * np.pi * np.arange(5) / 5))
        curve = boundary_curve(a)
        corners = find_corners(curve)
        assert len(corners) == 5
        for lam, width, _ in corners:
            assert width == pytest.approx(2 * np.pi / 5, abs=1e-3)
            assert np.min(np.abs(np.exp(2j * np.pi * np.arange(5) / 5) - lam)) <= 1e-9

    def test_off_boundary_point_rejected(self):
        curve = boundary_curve(TRIANGLE)
        with pytest.raises(NotOnBoundaryError):
            detect_corner(curve, 5.0 + 5.0j, 1e-7)


class TestClassifyPoint:
    def test_disk_round(self):
        curve = disk_curve()
        for theta in np.linspace(0.0, 2 * np.pi, 4, endpoint=False):
            assert classify_point(curve, theta).verdict == VERDICT_ROUND

    def test_triangle_vertex_corner(self):
        curve = boundary_curve(TRIANGLE)
        cls = classify_point(curve, 0.1)
        assert cls.verdict == VERDICT_CORNER
        assert cls.point == pytest.approx(1.0 + 0.0j, abs=1e-9)

    def test_corner_convention_nesting(self):
        # corner implies infinite curvature implies infinite upper curvature
        curve = boundary_curve(TRIANGLE)
        cls = classify_point(curve, 0.1)
        assert cls.is_corner
        assert np.isinf(cls.estimate.gamma_l_est)
        assert np.isinf(cls.estimate.gamma_u_est)
        assert cls.estimate.corner_convention

    def test_upper_only_implies_gamma_u_infinite(self):
        body = epigraph_body(2 * 22 + 1)
        verdict, est = classify_normalized(body, 20)
        assert verdict == VERDICT_UPPER_ONLY
        assert est.gamma_u_infinite
        assert est.gamma_l_est <= est.gamma_u_est

    def test_edge_midpoint_round(self):
        curve = boundary_curve(TRIANGLE)
        cls = classify_point(curve, np.pi / 4, base_point=(1.0 + 1j) / 2.0)
        assert cls.verdict == VERDICT_ROUND
        assert cls.estimate.gamma_u_est == 0.0

    def test_rotation_translation_invariance(self):
        rng = np.random.default_rng(47)
        cases = [(TRIANGLE, 0.1, VERDICT_CORNER), (JORDAN2, 1.0, VERDICT_ROUND)]
        for a, theta0, expected in cases:
            for _ in range(20):
                phi = float(rng.uniform(0.0, 2 * np.pi))
                c = complex(rng.standard_normal(), rng.standard_normal())
                b = np.exp(1j * phi) * a + c * np.eye(a.shape[0])
                curve = boundary_curve(b, refine_tol=1e-6)
                assert classify_point(curve, theta0 + phi).verdict == expected
