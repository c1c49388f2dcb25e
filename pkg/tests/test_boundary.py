import numpy as np
import pytest

from numrange.boundary import (
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
from numrange.errors import ValidationError
from numrange.linalg import random_unit_vectors, spectrum

JORDAN2 = np.array([[0, 1], [0, 0]], dtype=complex)
TRIANGLE = np.diag([1.0, 1j, -1.0]).astype(complex)
SEGMENT = np.diag([0.0, 1.0]).astype(complex)


def segment_distance(z, a, b):
    """Distance from z to the segment [a, b] in the complex plane."""
    d = b - a
    t = np.clip(((z - a) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    return abs(z - (a + t * d))


def triangle_boundary_distance(z):
    verts = [1.0, 1j, -1.0]
    return min(segment_distance(z, verts[i], verts[(i + 1) % 3]) for i in range(3))


class TestRayleigh:
    def test_identity(self):
        f = np.array([0.6, 0.8j])
        assert rayleigh(np.eye(2), f) == pytest.approx(1.0, abs=1e-14)

    def test_segment_midpoint(self):
        f = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert rayleigh(SEGMENT, f) == pytest.approx(0.5, abs=1e-14)

    def test_jordan_inner_product(self):
        # <Af, f> with f = (1,1)/sqrt(2): Af = (1,0)/sqrt(2), value 1/2
        f = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert rayleigh(JORDAN2, f) == pytest.approx(0.5, abs=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            rayleigh(np.eye(3), np.array([1.0, 0.0]))

    def test_non_unit_rejected(self):
        with pytest.raises(ValidationError):
            rayleigh(np.eye(2), np.array([1.0, 1.0]))


class TestSupportFunction:
    def test_identity_point_range(self):
        for theta in (0.0, 0.7, 3.9):
            s = support_function(np.eye(2), theta)
            assert s.support_value == pytest.approx(np.cos(theta), abs=1e-12)
            assert s.point == pytest.approx(1.0 + 0.0j, abs=1e-12)

    def test_segment_right_end(self):
        s = support_function(SEGMENT, 0.0)
        assert s.support_value == pytest.approx(1.0, abs=1e-14)
        assert s.point == pytest.approx(1.0 + 0.0j, abs=1e-12)

    def test_jordan_constant_support(self):
        # Hermitian part has eigenvalues +-1/2 for every angle
        for theta in np.linspace(0.0, 2 * np.pi, 7):
            s = support_function(JORDAN2, theta)
            assert s.support_value == pytest.approx(0.5, abs=1e-12)

    def test_sample_invariants_random(self):
        rng = np.random.default_rng(2)
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        nrm = np.linalg.norm(a, 2)
        for theta in rng.uniform(0.0, 2 * np.pi, 12):
            s = support_function(a, theta)
            assert abs((np.exp(-1j * theta) * s.point).real
                       - s.support_value) <= 1e-9 * nrm
            assert abs(s.point - rayleigh(a, s.witness)) <= 1e-10 * nrm


class TestBoundaryCurve:
    def test_segment_body_is_collinear(self):
        curve = boundary_curve(SEGMENT)
        assert np.max(np.abs(curve.points.imag)) <= 1e-9
        assert np.all(curve.points.real >= -1e-9)
        assert np.all(curve.points.real <= 1.0 + 1e-9)
        # flat-segment jumps exhaust the bisection depth
        assert len(curve.exhausted_intervals) >= 1

    def test_triangle_points_on_polygon(self):
        curve = boundary_curve(TRIANGLE, refine_tol=1e-8)
        for z in curve.points:
            assert triangle_boundary_distance(z) <= 1e-8
        # all three vertices are attained
        for v in (1.0, 1j, -1.0):
            assert np.min(np.abs(curve.points - v)) <= 1e-10

    def test_triangle_hull_matches_rayleigh_sampling(self):
        rng = np.random.default_rng(4)
        curve = boundary_curve(TRIANGLE)
        f = random_unit_vectors(3, 500, rng)
        z = np.einsum("bi,ij,bj->b", f.conj(), TRIANGLE, f)
        assert float(np.max(support_margin(curve, z))) <= 1e-8

    def test_disk_radius(self):
        curve = boundary_curve(JORDAN2, refine_tol=1e-8)
        assert np.max(np.abs(np.abs(curve.points) - 0.5)) <= 1e-8
        assert len(curve.exhausted_intervals) == 0

    def test_determinism(self):
        c1 = boundary_curve(JORDAN2, initial_angles=16, refine_tol=1e-5)
        c2 = boundary_curve(JORDAN2, initial_angles=16, refine_tol=1e-5)
        assert np.array_equal(c1.thetas, c2.thetas)
        assert np.array_equal(c1.points, c2.points)

    def test_convex_position(self):
        rng = np.random.default_rng(8)
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        curve = boundary_curve(a, refine_tol=1e-6)
        scale = curve.scale
        margins = support_margin(curve, curve.points)
        assert float(np.max(margins)) <= 1e-8 * scale
        # cross products along the theta-ordered samples never turn clockwise
        pts = curve.points
        u = pts - np.roll(pts, 1)
        v = np.roll(pts, -1) - pts
        cross = u.real * v.imag - u.imag * v.real
        assert float(np.min(cross)) >= -1e-8 * scale ** 2

    def test_rejects_few_angles(self):
        with pytest.raises(ValidationError):
            boundary_curve(JORDAN2, initial_angles=4)

    def test_refine_near_adds_samples(self):
        curve = boundary_curve(TRIANGLE)
        finer = refine_near(curve, 0.3, levels=10)
        assert len(finer.samples) > len(curve.samples)
        assert np.all(np.diff(finer.thetas) > 0)


class TestContains:
    def test_segment_membership(self):
        curve = boundary_curve(SEGMENT)
        assert contains(curve, 0.5, 1e-9)
        assert not contains(curve, 1j, 1e-9)

    def test_triangle_center(self):
        curve = boundary_curve(TRIANGLE)
        assert contains(curve, 0.0, 1e-9)

    def test_spectrum_inclusion(self):
        rng = np.random.default_rng(12)
        for n in (3, 5):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            curve = boundary_curve(a, refine_tol=1e-6)
            for lam in spectrum(a):
                assert contains(curve, lam, 1e-8 * curve.scale)


class TestAffineCovariance:
    def test_support_identity_under_affine_maps(self):
        # Hausdorff distance between convex bodies equals the sup of the
        # support-function difference; for W(alpha A + beta I) against
        # alpha W(A) + beta that difference vanishes identically.
        rng = np.random.default_rng(21)
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        nrm = np.linalg.norm(a, 2)
        thetas = np.linspace(0.0, 2 * np.pi, 256, endpoint=False)
        for _ in range(5):
            alpha = rng.standard_normal() + 1j * rng.standard_normal()
            beta = rng.standard_normal() + 1j * rng.standard_normal()
            phi = np.angle(alpha)
            transformed = alpha * a + beta * np.eye(4)
            h2 = support_values(transformed, thetas)
            h1 = support_values(a, thetas - phi)
            predicted = abs(alpha) * h1 + (np.exp(-1j * thetas) * beta).real
            tol = 1e-8 * (abs(alpha) * nrm + abs(beta))
            assert float(np.max(np.abs(h2 - predicted))) <= tol

    def test_transformed_samples_stay_on_boundary(self):
        rng = np.random.default_rng(22)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        alpha = 0.7 - 0.4j
        beta = 1.1 + 0.2j
        curve = boundary_curve(a, refine_tol=1e-6)
        curve2 = boundary_curve(alpha * a + beta * np.eye(3), refine_tol=1e-6)
        tol = 1e-8 * (abs(alpha) * np.linalg.norm(a, 2) + abs(beta))
        mapped = alpha * curve.points + beta
        assert float(np.max(support_margin(curve2, mapped))) <= tol
        back = (curve2.points - beta) / alpha
        assert float(np.max(support_margin(curve, back))) <= tol / abs(alpha)


class TestCompressionEllipse:
    def test_eigenvector_degenerates_to_point(self):
        e = compression_ellipse(SEGMENT, np.array([1.0, 0.0]))
        assert e.is_degenerate(1e-12)
        assert e.focus1 == pytest.approx(0.0 + 0.0j, abs=1e-14)
        assert e.focus2 == pytest.approx(0.0 + 0.0j, abs=1e-14)

    def test_jordan_full_disk(self):
        e = compression_ellipse(JORDAN2, np.array([0.0, 1.0]))
        assert e.focus1 == pytest.approx(0.0 + 0.0j, abs=1e-12)
        assert e.focus2 == pytest.approx(0.0 + 0.0j, abs=1e-12)
        assert e.minor_semiaxis == pytest.approx(0.5, abs=1e-12)

    def test_triangle_uniform_vector_contained(self):
        curve = boundary_curve(TRIANGLE)
        f = np.ones(3) / np.sqrt(3.0)
        e = compression_ellipse(TRIANGLE, f)
        assert not e.is_degenerate(1e-10)
        for z in e.boundary_points(64):
            assert contains(curve, z, 1e-8)

    def test_rayleigh_inside_own_ellipse(self):
        rng = np.random.default_rng(31)
        for n in (2, 4, 6):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            nrm = np.linalg.norm(a, 2)
            for f in random_unit_vectors(n, 10, rng):
                e = compression_ellipse(a, f)
                assert e.focal_sum_slack(rayleigh(a, f)) <= 1e-9 * nrm

    def test_containment_random(self):
        rng = np.random.default_rng(32)
        for n in (3, 6):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            curve = boundary_curve(a, refine_tol=1e-6)
            tol = 1e-7 * curve.scale
            for f in random_unit_vectors(n, 8, rng):
                e = compression_ellipse(a, f)
                margins = support_margin(curve, e.boundary_points(64))
                assert float(np.max(margins)) <= tol


class TestEllipticalRangeOracle:
    def test_brute_force_rayleigh_sampling(self):
        # validates the closed-form 2x2 elliptical range against direct
        # Rayleigh sampling before anything downstream relies on it
        rng = np.random.default_rng(33)
        for _ in range(20):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            e = elliptical_range(a)
            f = random_unit_vectors(2, 100000, rng)
            z = np.einsum("bi,ij,bj->b", f.conj(), a, f)
            slack = (np.abs(z - e.focus1) + np.abs(z - e.focus2)
                     - 2.0 * e.major_semiaxis)
            assert float(np.max(slack)) <= 1e-9
            # the sampled cloud reaches out to the boundary: the maximal
            # focal sum comes within 0.1% of the ellipse's
            assert float(np.max(slack)) >= -1e-3 * max(e.major_semiaxis, 1e-9)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValidationError):
            elliptical_range(np.eye(3))
