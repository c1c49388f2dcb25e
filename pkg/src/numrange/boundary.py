"""Numerical range boundary machinery.

The boundary of W(A) is parametrized by the outward-normal angle theta:
the support value h(theta) is the top eigenvalue of the Hermitian part of
e^{-i theta} A, and the Rayleigh value of the top eigenvector is a point
of the boundary attaining it.  Corners of W(A) appear as theta-intervals
mapping to one point; flat segments appear as point jumps at a single
theta.  Both are features the downstream corner/curvature code consumes,
not failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import as_square_matrix, as_unit_vector, tolerance_scale
from .errors import NonConvergenceError, ValidationError

__all__ = [
    "BoundarySample",
    "BoundaryCurve",
    "Ellipse",
    "rayleigh",
    "support_function",
    "support_values",
    "boundary_curve",
    "refine_near",
    "contains",
    "support_margin",
    "compression_ellipse",
    "elliptical_range",
]

TWO_PI = 2.0 * np.pi

# Batch size for stacked Hermitian eigensolves; bounds peak memory.
_EIG_CHUNK = 4096


@dataclass(frozen=True)
class BoundarySample:
    """One boundary point of W(A): angle, support value, point and witness."""

    theta: float
    support_value: float
    point: complex
    witness: np.ndarray


@dataclass(frozen=True)
class BoundaryCurve:
    """Ordered boundary samples of W(A) with refinement metadata.

    ``exhausted_intervals`` lists angular intervals where bisection hit the
    depth cap while the endpoint points still differed: the signature of a
    flat segment (point jump) or of the edge of a corner's normal cone.
    """

    samples: tuple[BoundarySample, ...]
    refinement_depth: int
    matrix_norm: float
    matrix: np.ndarray
    exhausted_intervals: tuple[tuple[float, float], ...] = ()
    _thetas: np.ndarray = field(init=False, repr=False, compare=False)
    _supports: np.ndarray = field(init=False, repr=False, compare=False)
    _points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        thetas = np.array([s.theta for s in self.samples], dtype=float)
        if thetas.size == 0:
            raise ValidationError("boundary curve has no samples")
        if np.any(np.diff(thetas) <= 0):
            raise ValidationError("boundary samples must be strictly increasing in theta")
        object.__setattr__(self, "_thetas", thetas)
        object.__setattr__(
            self, "_supports", np.array([s.support_value for s in self.samples]))
        object.__setattr__(
            self, "_points", np.array([s.point for s in self.samples], dtype=complex))

    @property
    def thetas(self) -> np.ndarray:
        return self._thetas

    @property
    def supports(self) -> np.ndarray:
        return self._supports

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def scale(self) -> float:
        """Scale for relative tolerances (||A||, floored at 1 for A = 0)."""
        return self.matrix_norm if self.matrix_norm > 0.0 else 1.0

    def sample_nearest(self, theta: float) -> BoundarySample:
        """Sample whose angle is circularly closest to ``theta``."""
        d = np.abs((self._thetas - theta + np.pi) % TWO_PI - np.pi)
        return self.samples[int(np.argmin(d))]


@dataclass(frozen=True)
class Ellipse:
    """Ellipse given by its foci and minor semi-axis.

    Degenerate when the minor semi-axis is (numerically) zero: the set is
    then the segment between the foci, or a point if they coincide.
    """

    focus1: complex
    focus2: complex
    minor_semiaxis: float

    @property
    def center(self) -> complex:
        return 0.5 * (self.focus1 + self.focus2)

    @property
    def focal_half_distance(self) -> float:
        return 0.5 * abs(self.focus2 - self.focus1)

    @property
    def major_semiaxis(self) -> float:
        return float(np.hypot(self.minor_semiaxis, self.focal_half_distance))

    @property
    def area(self) -> float:
        return float(np.pi * self.major_semiaxis * self.minor_semiaxis)

    def is_degenerate(self, tol: float = 0.0) -> bool:
        return self.minor_semiaxis <= tol

    def _axis_direction(self) -> complex:
        d = self.focus2 - self.focus1
        return d / abs(d) if abs(d) > 0.0 else 1.0 + 0.0j

    def boundary_points(self, count: int) -> np.ndarray:
        """``count`` points tracing the (possibly degenerate) boundary."""
        t = np.linspace(0.0, TWO_PI, count, endpoint=False)
        u = self._axis_direction()
        a = self.major_semiaxis
        b = self.minor_semiaxis
        return self.center + u * (a * np.cos(t) + 1j * b * np.sin(t))

    def focal_sum_slack(self, z: complex) -> float:
        """|z-f1| + |z-f2| - 2a; nonpositive iff z is in the closed ellipse."""
        return float(abs(z - self.focus1) + abs(z - self.focus2)
                     - 2.0 * self.major_semiaxis)

    def contains_point(self, z: complex, tol: float = 0.0) -> bool:
        return self.focal_sum_slack(z) <= tol

    def boundary_distance(self, z: complex) -> float:
        """Euclidean distance from ``z`` to the ellipse boundary."""
        u = self._axis_direction()
        a = self.major_semiaxis
        b = self.minor_semiaxis

        def pt(t):
            return self.center + u * (a * np.cos(t) + 1j * b * np.sin(t))

        ts = np.linspace(0.0, TWO_PI, 512, endpoint=False)
        d = np.abs(pt(ts) - z)
        k = int(np.argmin(d))
        lo, hi = ts[k] - TWO_PI / 512, ts[k] + TWO_PI / 512
        # golden-section polish of the unimodal local minimum
        phi = (np.sqrt(5.0) - 1.0) / 2.0
        x1 = hi - phi * (hi - lo)
        x2 = lo + phi * (hi - lo)
        f1, f2 = abs(pt(x1) - z), abs(pt(x2) - z)
        for _ in range(80):
            if f1 < f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - phi * (hi - lo)
                f1 = abs(pt(x1) - z)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + phi * (hi - lo)
                f2 = abs(pt(x2) - z)
        return float(min(f1, f2))


def rayleigh(a, f) -> complex:
    """Rayleigh value <A f, f> of a unit vector ``f``."""
    arr = as_square_matrix(a)
    vec = as_unit_vector(f, dim=arr.shape[0], name="f")
    return complex(np.vdot(vec, arr @ vec))


def _support_batch(a: np.ndarray, a_conj_t: np.ndarray,
                   thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Support values, boundary points and witnesses at many angles at once."""
    h_out = np.empty(thetas.shape[0])
    z_out = np.empty(thetas.shape[0], dtype=complex)
    v_out = np.empty((thetas.shape[0], a.shape[0]), dtype=complex)
    for lo in range(0, thetas.shape[0], _EIG_CHUNK):
        hi = min(lo + _EIG_CHUNK, thetas.shape[0])
        ph = np.exp(-1j * thetas[lo:hi])[:, None, None]
        stack = 0.5 * (ph * a + np.conj(ph) * a_conj_t)
        try:
            w, vecs = np.linalg.eigh(stack)
        except np.linalg.LinAlgError as exc:
            raise NonConvergenceError(
                f"support eigensolver failed on {hi - lo} angles: {exc}") from exc
        top = vecs[:, :, -1]
        h_out[lo:hi] = w[:, -1]
        v_out[lo:hi] = top
        z_out[lo:hi] = np.einsum("mi,ij,mj->m", top.conj(), a, top)
    return h_out, z_out, v_out


def support_values(a, thetas) -> np.ndarray:
    """Support function h(theta) of W(A) at an array of angles.

    Exact up to eigensolver accuracy regardless of any boundary sampling;
    useful for Hausdorff-style comparisons of convex bodies.
    """
    arr = as_square_matrix(a)
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    h, _, _ = _support_batch(arr, arr.conj().T, th)
    return h


def support_function(a, theta: float) -> BoundarySample:
    """Boundary sample of W(A) in outward-normal direction ``theta``.

    h(theta) is the top eigenvalue of the Hermitian part of e^{-i theta}A;
    the witness is the corresponding unit eigenvector and the point is its
    Rayleigh value.
    """
    arr = as_square_matrix(a)
    th = float(theta)
    h, z, v = _support_batch(arr, arr.conj().T, np.array([th]))
    return BoundarySample(theta=th, support_value=float(h[0]),
                          point=complex(z[0]), witness=v[0])


def _assemble_curve(a: np.ndarray, table: dict, depth: int, nrm: float,
                    exhausted: list) -> BoundaryCurve:
    thetas = sorted(table.keys())
    samples = tuple(
        BoundarySample(theta=t, support_value=table[t][0], point=table[t][1],
                       witness=table[t][2])
        for t in thetas
    )
    frozen = a.copy()
    frozen.setflags(write=False)
    return BoundaryCurve(samples=samples, refinement_depth=depth,
                         matrix_norm=nrm, matrix=frozen,
                         exhausted_intervals=tuple(exhausted))


def boundary_curve(a, initial_angles: int = 64, refine_tol: float = 1e-8,
                   max_depth: int = 40) -> BoundaryCurve:
    """Adaptively sampled boundary of W(A).

    Starts from ``initial_angles`` equispaced outward normals and bisects
    angular intervals whose endpoint boundary points differ by more than
    ``refine_tol * ||A||``.  An interval stops refining once its midpoint
    sample lies on the chord of its endpoints (within the same tolerance,
    and not collapsed onto an endpoint): the polygonal approximation is
    then locally faithful.  Intervals that still jump after ``max_depth``
    bisections are recorded in ``exhausted_intervals``; they mark flat
    segments or corner-cone edges, and the bisection cascade pins those
    angles to ~2^-max_depth.

    The refined sample set is deterministic for fixed arguments: the
    worklist is processed level-synchronously in angle order.
    """
    arr = as_square_matrix(a)
    if initial_angles < 8:
        raise ValidationError("initial_angles must be >= 8")
    nrm = float(np.linalg.norm(arr, 2))
    scale = nrm if nrm > 0.0 else 1.0
    tol = refine_tol * scale
    a_ct = arr.conj().T

    table: dict[float, tuple[float, complex, np.ndarray]] = {}

    def ensure(thetas: list[float]) -> None:
        missing = sorted({t % TWO_PI for t in thetas} - table.keys())
        if not missing:
            return
        th = np.array(missing)
        h, z, v = _support_batch(arr, a_ct, th)
        for i, t in enumerate(missing):
            table[t] = (float(h[i]), complex(z[i]), v[i])

    def point(t: float) -> complex:
        return table[t % TWO_PI][1]

    grid = np.linspace(0.0, TWO_PI, initial_angles, endpoint=False)
    ensure(list(grid))
    work = [(grid[i], grid[i + 1] if i + 1 < initial_angles else TWO_PI, 0)
            for i in range(initial_angles)]

    exhausted: list[tuple[float, float]] = []
    deepest = 0
    while work:
        active = []
        for t1, t2, d in work:
            if abs(point(t2) - point(t1)) <= tol:
                continue
            if d >= max_depth:
                exhausted.append((t1, t2))
                continue
            active.append((t1, t2, d))
        if not active:
            break
        mids = [0.5 * (t1 + t2) for t1, t2, _ in active]
        ensure(mids)
        next_work = []
        for (t1, t2, d), tm in zip(active, mids):
            deepest = max(deepest, d + 1)
            z1, zm, z2 = point(t1), point(tm), point(t2)
            chord = z2 - z1
            denom = abs(chord) ** 2
            frac = (np.conj(chord) * (zm - z1)).real / denom
            proj = z1 + min(max(frac, 0.0), 1.0) * chord
            sagitta = abs(zm - proj)
            if sagitta <= tol and 0.2 <= frac <= 0.8:
                # midpoint sits on the chord: the arc is locally resolved
                continue
            next_work.append((t1, tm, d + 1))
            next_work.append((tm, t2, d + 1))
        work = next_work

    return _assemble_curve(arr, table, deepest, nrm, exhausted)


def refine_near(curve: BoundaryCurve, theta0: float, levels: int,
                delta0: float = np.pi / 8) -> BoundaryCurve:
    """Curve with extra samples on a dyadic angle ladder around ``theta0``.

    Adds theta0 and theta0 +/- delta0 * 2^-k for k < ``levels``; in
    normalized coordinates at theta0 these land at roughly dyadic
    tangential offsets, which is what the curvature estimator consumes.
    """
    a = curve.matrix
    deltas = delta0 * np.power(0.5, np.arange(levels))
    wanted = {theta0 % TWO_PI}
    for d in deltas:
        wanted.add((theta0 + d) % TWO_PI)
        wanted.add((theta0 - d) % TWO_PI)
    missing = sorted(wanted - set(curve.thetas.tolist()))
    if not missing:
        return curve
    h, z, v = _support_batch(a, a.conj().T, np.array(missing))
    fresh = [BoundarySample(theta=t, support_value=float(h[i]),
                            point=complex(z[i]), witness=v[i])
             for i, t in enumerate(missing)]
    positions = np.searchsorted(curve.thetas, missing)
    merged: list[BoundarySample] = []
    prev = 0
    for pos, s in zip(positions, fresh):
        merged.extend(curve.samples[prev:pos])
        merged.append(s)
        prev = pos
    merged.extend(curve.samples[prev:])
    return BoundaryCurve(samples=tuple(merged),
                         refinement_depth=curve.refinement_depth,
                         matrix_norm=curve.matrix_norm, matrix=curve.matrix,
                         exhausted_intervals=curve.exhausted_intervals)


def support_margin(curve: BoundaryCurve, z) -> np.ndarray:
    """max over sampled theta of Re(e^{-i theta} z) - h(theta), per query point.

    Nonpositive (within tolerance) iff the point lies in the sampled outer
    approximation of the closed numerical range.
    """
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    phases = np.exp(-1j * curve.thetas)
    proj = np.real(zs[:, None] * phases[None, :])
    return np.max(proj - curve.supports[None, :], axis=1)


def contains(curve: BoundaryCurve, z: complex, tol: float) -> bool:
    """Membership test for the closed numerical range described by ``curve``."""
    return bool(support_margin(curve, z)[0] <= tol)


def elliptical_range(b) -> Ellipse:
    """Numerical range of a 2 x 2 matrix as an ellipse.

    Foci are the eigenvalues; the minor semi-axis is
    sqrt(trace(B*B) - |l1|^2 - |l2|^2) / 2.  Validated against brute-force
    Rayleigh sampling in the test suite before anything downstream leans
    on it.
    """
    arr = as_square_matrix(b)
    if arr.shape[0] != 2:
        raise ValidationError("elliptical_range expects a 2 x 2 matrix")
    ev = np.linalg.eigvals(arr)
    gram = float(np.trace(arr.conj().T @ arr).real)
    minor_sq = gram - abs(ev[0]) ** 2 - abs(ev[1]) ** 2
    minor = 0.5 * np.sqrt(max(minor_sq, 0.0))
    return Ellipse(focus1=complex(ev[0]), focus2=complex(ev[1]),
                   minor_semiaxis=float(minor))


def compression_ellipse(a, f, parallel_tol: float = 1e-12) -> Ellipse:
    """Numerical range of the compression of A to span{f, Af}.

    If Af is parallel to f (within ``parallel_tol * ||A||``) the span is
    one-dimensional and the result is the degenerate point-ellipse at the
    Rayleigh value.  Otherwise the orthonormalized pair spans a 2-d
    subspace whose compression has an elliptical range contained in the
    closure of W(A).
    """
    arr = as_square_matrix(a)
    vec = as_unit_vector(f, dim=arr.shape[0], name="f")
    scale = tolerance_scale(arr)
    af = arr @ vec
    z0 = complex(np.vdot(vec, af))
    residual = af - z0 * vec
    if np.linalg.norm(residual) <= parallel_tol * scale:
        return Ellipse(focus1=z0, focus2=z0, minor_semiaxis=0.0)
    g = residual / np.linalg.norm(residual)
    v = np.column_stack([vec, g])
    b = v.conj().T @ arr @ v
    return elliptical_range(b)
