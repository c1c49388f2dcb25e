"""Boundary curvature estimation and corner detection.

A boundary point is moved to the origin with its supporting line on the
real axis and the body in the closed upper half-plane; the lower/upper
curvature are the liminf/limsup of y / x^2 along the boundary.  The
estimator reads those ratios off a dyadic ladder of tangential scales and
declares divergence from the growth of the ratio tail.  Corners are
detected separately, from the angular width of the set of outward normals
attaining the point, and supersede ratio estimation (which is ill-posed
at a corner: the supporting line is not unique); corner points carry
infinite lower and upper curvature by convention.

The divergence thresholds are an engineering choice, not a mathematical
certainty; estimates always carry their ratio tails and thresholds as
evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import TWO_PI, BoundaryCurve, refine_near, support_margin
from .errors import NotOnBoundaryError, ResolutionError, ValidationError

__all__ = [
    "NormalizedBoundary",
    "CurvatureEstimate",
    "PointClassification",
    "VERDICT_CORNER",
    "VERDICT_INFINITE",
    "VERDICT_UPPER_ONLY",
    "VERDICT_ROUND",
    "normalize_at",
    "curvature_estimate",
    "detect_corner",
    "classify_point",
    "classify_normalized",
    "epigraph_body",
    "epigraph_exact_ratio",
]

VERDICT_CORNER = "corner"
VERDICT_INFINITE = "infinite-curvature"
VERDICT_UPPER_ONLY = "infinite-upper-curvature-only"
VERDICT_ROUND = "round"

# Default machine-level y-noise of eigensolver-derived boundary samples,
# relative to the matrix scale.  The finest trusted tangential scale is
# sqrt of this (times a safety margin): y / x^2 amplifies noise quadratically.
EIG_EPS = 1e-12
_SCALE_MARGIN = 8.0


@dataclass(frozen=True)
class NormalizedBoundary:
    """Boundary samples in canonical position at a base point.

    The base point sits at the origin, the supporting line is the real
    axis and the body lies in the closed upper half-plane; samples are
    (x, y) pairs sorted by x.  ``noise_floor`` is the absolute noise level
    of the y values (0 for analytically generated bodies).
    """

    base_point: complex
    base_theta: float
    xs: np.ndarray
    ys: np.ndarray
    scale: float
    noise_floor: float

    def __post_init__(self):
        if self.xs.shape != self.ys.shape:
            raise ValidationError("xs and ys must have matching shapes")
        if self.xs.size and np.min(self.ys) < -1e-9 * self.scale:
            raise ValidationError(
                "normalized samples dip below the supporting line: "
                f"min y = {np.min(self.ys):.3e}")

    @property
    def samples(self) -> np.ndarray:
        """(m, 2) array of normalized (x, y) pairs."""
        return np.column_stack([self.xs, self.ys])


@dataclass(frozen=True)
class CurvatureEstimate:
    """Dyadic-scale ratio data and the derived curvature estimates.

    ``scales`` are the dyadic targets (decreasing); per side, the actual
    sample coordinates and ratios are aligned with them (NaN = no usable
    sample at that scale).  ``gamma_l_est`` / ``gamma_u_est`` may be
    ``inf``; for corner points they are infinite by convention and
    ``corner_convention`` is set.  The divergence thresholds used are
    recorded so every verdict carries its evidence, and the per-side tail
    exponents (slope of log ratio against log 1/x) distinguish wedge-type
    tails (exponent 1) from fractional-power boundaries.
    """

    scales: np.ndarray
    right_x: np.ndarray
    right_y: np.ndarray
    right_ratios: np.ndarray
    left_x: np.ndarray
    left_y: np.ndarray
    left_ratios: np.ndarray
    gamma_l_est: float
    gamma_u_est: float
    right_diverged: bool
    left_diverged: bool
    growth_threshold: float
    floor_threshold: float
    corner_convention: bool = False
    right_tail_exponent: float = float("nan")
    left_tail_exponent: float = float("nan")

    @property
    def gamma_l_infinite(self) -> bool:
        return np.isinf(self.gamma_l_est)

    @property
    def gamma_u_infinite(self) -> bool:
        return np.isinf(self.gamma_u_est)

    def tail(self, side: str, length: int = 3) -> np.ndarray:
        """Finest ``length`` usable ratios on one side (coarse to fine)."""
        r = self.right_ratios if side == "right" else self.left_ratios
        usable = r[~np.isnan(r)]
        return usable[-length:]


@dataclass(frozen=True)
class PointClassification:
    """Verdict for one boundary point, with its supporting evidence.

    The verdicts are nested (corner => infinite curvature => infinite
    upper curvature); ``verdict`` reports the strongest true class.
    """

    verdict: str
    theta: float
    point: complex
    is_corner: bool
    normal_cone_width: float
    estimate: CurvatureEstimate
    corner_widths: tuple[float, ...] = ()


def _empty_estimate(gamma: float, growth: float, floor: float,
                    corner: bool) -> CurvatureEstimate:
    e = np.empty(0)
    return CurvatureEstimate(
        scales=e, right_x=e, right_y=e, right_ratios=e,
        left_x=e, left_y=e, left_ratios=e,
        gamma_l_est=gamma, gamma_u_est=gamma,
        right_diverged=corner, left_diverged=corner,
        growth_threshold=growth, floor_threshold=floor,
        corner_convention=corner)


def normalize_at(curve: BoundaryCurve, theta0: float,
                 base_point: complex | None = None,
                 eig_eps: float = EIG_EPS) -> NormalizedBoundary:
    """Map the curve to canonical position at the boundary point of ``theta0``.

    With lam the boundary point attained at (the sample closest to)
    ``theta0``, every boundary point z maps to w = -i e^{-i theta}(z - lam):
    the base point lands at the origin, the supporting line becomes the
    real axis, and Im w is the support slack (nonnegative).  An explicit
    ``base_point`` may be supplied, e.g. to study a flat-segment point that
    the eigensolver's arbitrary degenerate witness did not land on; it must
    lie on the supporting line and on the boundary.
    """
    s = curve.sample_nearest(theta0)
    theta = s.theta
    scale = curve.scale
    lam = s.point if base_point is None else complex(base_point)
    if base_point is not None:
        slack = s.support_value - (np.exp(-1j * theta) * lam).real
        if abs(slack) > 1e-8 * scale or support_margin(curve, lam)[0] > 1e-8 * scale:
            raise NotOnBoundaryError(
                f"base point {lam!r} is not attained on the supporting line "
                f"at theta = {theta!r}")
    w = -1j * np.exp(-1j * theta) * (curve.points - lam)
    xs = np.concatenate([w.real, [0.0]])
    ys = np.concatenate([w.imag, [0.0]])
    order = np.lexsort((ys, xs))
    return NormalizedBoundary(base_point=lam, base_theta=theta,
                              xs=xs[order], ys=ys[order], scale=scale,
                              noise_floor=eig_eps * scale)


def epigraph_body(n_samples: int) -> NormalizedBoundary:
    """Boundary of the epigraph of x^4 (x <= 0) / x^(3/2) (x > 0) on [-1, 1].

    Samples sit at dyadic x; the exact ratio companion is
    ``epigraph_exact_ratio``: y/x^2 equals x^(-1/2) on the right and x^2 on
    the left, so the upper curvature at 0 diverges while the lower
    curvature vanishes.
    """
    if n_samples < 16:
        raise ValidationError("n_samples must be >= 16")
    levels = (int(n_samples) - 1) // 2
    xr = np.power(0.5, np.arange(levels, dtype=float))  # 1, 1/2, ...
    xs = np.concatenate([-xr, [0.0], xr[::-1]])
    xs = np.sort(xs)
    ys = np.where(xs > 0.0, np.abs(xs) ** 1.5, xs ** 4)
    ys[xs == 0.0] = 0.0
    return NormalizedBoundary(base_point=0.0 + 0.0j, base_theta=-0.5 * np.pi,
                              xs=xs, ys=ys, scale=1.0, noise_floor=0.0)


def epigraph_exact_ratio(x: float) -> float:
    """Exact y/x^2 of the epigraph body at signed coordinate ``x`` != 0."""
    if x > 0.0:
        return float(1.0 / np.sqrt(x))
    return float(x * x)


def _select_side(absx: np.ndarray, ys: np.ndarray, targets: np.ndarray,
                 noise_floor: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per dyadic target, the usable sample (x, y, ratio) on one side.

    Only the boundary branch approaching the base point counts: on each
    side the body's boundary is the graph of a convex function y(x) up to
    the extreme tangential coordinate, so samples are prefiltered to the
    lower envelope in |x| (dropping far-branch points, which have small
    |x| but do not approach the origin).  Then the sample with smallest
    |x| >= target is taken and rejected when it overshoots the next
    coarser scale.  Across flat stretches, where the boundary coincides
    with a chord at the noise floor, a synthetic ratio-0 sample is
    interpolated instead.
    """
    order = np.lexsort((ys, absx))
    ax = absx[order]
    ay = ys[order]
    if ax.shape[0]:
        suffix_min = np.minimum.accumulate(ay[::-1])[::-1]
        shifted = np.append(suffix_min[1:], np.inf)
        keep = ay <= shifted + noise_floor + 1e-15
        ax = ax[keep]
        ay = ay[keep]
    x_out = np.full(targets.shape, np.nan)
    y_out = np.full(targets.shape, np.nan)
    r_out = np.full(targets.shape, np.nan)
    flat_tol = max(noise_floor, 0.0)
    for i, s in enumerate(targets):
        pos = int(np.searchsorted(ax, s, side="left"))
        if pos < ax.shape[0] and ax[pos] <= 2.0 * s:
            x_out[i] = ax[pos]
            y_out[i] = ay[pos]
            y_eff = 0.0 if ay[pos] <= flat_tol else ay[pos]
            r_out[i] = y_eff / ax[pos] ** 2
            continue
        # flat-chord synthesis: both bracketing samples at the noise floor
        lo_y = 0.0 if pos == 0 else ay[pos - 1]
        if pos < ax.shape[0] and lo_y <= flat_tol and ay[pos] <= flat_tol:
            x_out[i] = s
            y_out[i] = 0.0
            r_out[i] = 0.0
    return x_out, y_out, r_out


def _tail_diverged(ratios: np.ndarray, growth: float, floor: float) -> bool:
    usable = ratios[~np.isnan(ratios)]
    if usable.shape[0] < 3:
        return False
    r1, r2, r3 = usable[-3], usable[-2], usable[-1]
    if r3 <= floor:
        return False
    if r1 <= 0.0 or r2 <= 0.0:
        return False
    return r2 >= growth * r1 and r3 >= growth * r2


def _tail_slopes(xs: np.ndarray, ratios: np.ndarray, length: int = 6) -> np.ndarray:
    """Pairwise log-log slopes of ratio against 1/x over the finest scales."""
    usable = ~np.isnan(ratios) & (ratios > 0.0)
    x = xs[usable][-length:]
    r = ratios[usable][-length:]
    if x.shape[0] < 2:
        return np.empty(0)
    return np.diff(np.log(r)) / -np.diff(np.log(x))


def _tail_exponent(xs: np.ndarray, ratios: np.ndarray, length: int = 6) -> float:
    """Power p with ratio ~ x^-p over the finest usable scales (NaN if < 2)."""
    slopes = _tail_slopes(xs, ratios, length)
    if slopes.shape[0] == 0:
        return float("nan")
    return float(np.median(slopes))


def curvature_estimate(nb: NormalizedBoundary, num_scales: int,
                       growth: float = 1.2, floor: float = 1e3,
                       tail_len: int = 3,
                       slope_exponent_cut: float = 0.75) -> CurvatureEstimate:
    """Dyadic-scale curvature ratios and gamma_l / gamma_u estimates.

    Targets are S0 * 2^-k for k = 1..num_scales with S0 the tangential
    extent of the body, truncated below the finest trusted scale
    (sqrt of the eigensolver noise, with a safety margin).  Per side the
    ratio tail is declared divergent (+inf) when the last three usable
    ratios grow by at least ``growth`` per scale and the finest exceeds
    ``floor``.  gamma_u is infinite if either side diverges; gamma_l only
    if every side with data does.  Raises ResolutionError when no side
    reaches the finest trusted scales.

    For resolution-limited data (positive noise floor) a divergent tail
    whose exponent is slope-like (ratio ~ 1/x within ``slope_exponent_cut``,
    i.e. the boundary has a nonzero one-sided slope at every trusted
    scale) is a wedge rounded below the trusted resolution, not a
    fractional-power boundary; it is not flagged.  Corner-vs-round for
    such points is the corner detector's call.  Analytic bodies
    (noise floor 0) are exempt: their ladders resolve arbitrarily deep.
    """
    if num_scales < 1:
        raise ValidationError("num_scales must be positive")
    mask = nb.xs != 0.0
    xs = nb.xs[mask]
    ys = np.maximum(nb.ys[mask], 0.0)
    if xs.size == 0:
        raise ResolutionError("normalized boundary has no off-origin samples")
    s0 = float(np.max(np.abs(xs)))
    targets = s0 * np.power(0.5, np.arange(1, num_scales + 1, dtype=float))
    if nb.noise_floor > 0.0:
        min_x = _SCALE_MARGIN * np.sqrt(nb.noise_floor * nb.scale)
        targets = targets[targets >= min_x]
    if targets.size == 0:
        raise ResolutionError(
            "no dyadic scales above the trusted noise floor", finest_scale=s0)

    right = xs > 0.0
    rx, ry, rr = _select_side(xs[right], ys[right], targets, nb.noise_floor)
    lx, ly, lr = _select_side(-xs[~right], ys[~right], targets, nb.noise_floor)

    def side_ok(ratios: np.ndarray) -> bool:
        usable = ~np.isnan(ratios)
        if usable.sum() < tail_len:
            return False
        # data must reach (nearly) the finest trusted scale
        finest_covered = np.nonzero(usable)[0][-1]
        return finest_covered >= targets.shape[0] - 2

    right_ok = side_ok(rr)
    left_ok = side_ok(lr)
    if not right_ok and not left_ok:
        reached = np.nanmin(np.concatenate([
            np.abs(rx[~np.isnan(rx)]), np.abs(lx[~np.isnan(lx)]), [np.inf]]))
        raise ResolutionError(
            "boundary samples do not span the requested dyadic scales",
            finest_scale=float(reached))

    right_p = _tail_exponent(rx, rr)
    left_p = _tail_exponent(lx, lr)
    resolution_limited = nb.noise_floor > 0.0

    def diverged(xs_side: np.ndarray, ratios: np.ndarray, exponent: float) -> bool:
        if not _tail_diverged(ratios, growth, floor):
            return False
        if not resolution_limited:
            return True
        if np.isfinite(exponent) and exponent >= slope_exponent_cut:
            return False  # wedge signature: rounding below trusted resolution
        slopes = _tail_slopes(xs_side, ratios)
        if slopes.shape[0] >= 3 and slopes[-1] <= slopes[0] - 0.1:
            return False  # decelerating growth: curvature saturating below it
        return True

    right_div = right_ok and diverged(rx, rr, right_p)
    left_div = left_ok and diverged(lx, lr, left_p)

    tails = []
    if right_ok and not right_div:
        tails.append(rr[~np.isnan(rr)][-tail_len:])
    if left_ok and not left_div:
        tails.append(lr[~np.isnan(lr)][-tail_len:])
    sides_with_data = int(right_ok) + int(left_ok)
    diverged_sides = int(right_div) + int(left_div)

    if diverged_sides == sides_with_data:
        gamma_l = np.inf
    else:
        gamma_l = float(min(np.min(t) for t in tails))
    if diverged_sides > 0:
        gamma_u = np.inf
    else:
        gamma_u = float(max(np.max(t) for t in tails))

    return CurvatureEstimate(
        scales=targets, right_x=rx, right_y=ry, right_ratios=rr,
        left_x=lx, left_y=ly, left_ratios=lr,
        gamma_l_est=gamma_l, gamma_u_est=gamma_u,
        right_diverged=right_div, left_diverged=left_div,
        growth_threshold=growth, floor_threshold=floor,
        right_tail_exponent=right_p, left_tail_exponent=left_p)


def _circular_span(thetas: np.ndarray) -> float:
    """Width of the smallest circular arc containing ``thetas``."""
    if thetas.size <= 1:
        return 0.0
    t = np.sort(thetas % TWO_PI)
    gaps = np.diff(t)
    wrap = t[0] + TWO_PI - t[-1]
    return float(TWO_PI - max(np.max(gaps, initial=0.0), wrap))


def detect_corner(curve: BoundaryCurve, lam: complex, tol: float,
                  angular_tol: float = 1e-6,
                  shrink_factors: tuple[float, ...] = (1.0, 0.25, 0.0625),
                  stability_factor: float = 2.0) -> tuple[bool, float]:
    """Corner test at a boundary point ``lam``.

    Measures the angular width of the set of sampled normals whose
    boundary point matches ``lam`` within ``tol``, re-measuring with the
    match tolerance shrunk by ``shrink_factors``: a genuine corner keeps a
    stable width (its normal cone), while a merely high-curvature arc's
    width collapses proportionally to the tolerance.  Returns the verdict
    and the measured normal-cone width; the interior angle of the
    enclosing sector is pi minus that width.
    """
    d = np.abs(curve.points - lam)
    if float(np.min(d)) > tol:
        raise NotOnBoundaryError(
            f"point {lam!r} is not attained on the sampled boundary within {tol!r}")
    widths = []
    for f in shrink_factors:
        widths.append(_circular_span(curve.thetas[d <= tol * f]))
    width_finest = widths[-1]
    stable = widths[0] <= stability_factor * max(width_finest, angular_tol)
    is_corner = min(widths) > angular_tol and stable
    return is_corner, width_finest


def classify_normalized(nb: NormalizedBoundary, num_scales: int = 24,
                        growth: float = 1.2, floor: float = 1e3,
                        tail_len: int = 3) -> tuple[str, CurvatureEstimate]:
    """Ratio-based verdict for a normalized boundary (no corner test)."""
    est = curvature_estimate(nb, num_scales, growth=growth, floor=floor,
                             tail_len=tail_len)
    if est.gamma_l_infinite:
        return VERDICT_INFINITE, est
    if est.gamma_u_infinite:
        return VERDICT_UPPER_ONLY, est
    return VERDICT_ROUND, est


def classify_point(curve: BoundaryCurve, theta0: float,
                   base_point: complex | None = None,
                   num_scales: int = 24, growth: float = 1.2,
                   floor: float = 1e3, angular_tol: float = 1e-6,
                   corner_match_rel: float = 1e-7, tail_len: int = 3,
                   eig_eps: float = EIG_EPS) -> PointClassification:
    """Classify the boundary point at outward normal ``theta0``.

    The corner test runs first (and supersedes ratio estimation, which is
    ill-posed at corners); otherwise the dyadic ratio tails decide between
    infinite curvature, infinite upper curvature only, and round.  The
    curve is refined locally on a dyadic angle ladder before estimating.
    """
    work = refine_near(curve, theta0, levels=num_scales + 6)
    s = work.sample_nearest(theta0)
    lam = s.point if base_point is None else complex(base_point)
    scale = work.scale
    match_tol = corner_match_rel * scale
    try:
        is_c, width = detect_corner(work, lam, match_tol, angular_tol=angular_tol)
    except NotOnBoundaryError:
        if base_point is None:
            raise
        # an explicit base point interior to a flat segment is attained by
        # no sampled normal: its normal cone is the single tie angle
        # (normalize_at below still validates boundary membership)
        is_c, width = False, 0.0
    corner_widths = tuple(
        _circular_span(work.thetas[np.abs(work.points - lam) <= match_tol * f])
        for f in (1.0, 0.25, 0.0625))
    if is_c:
        est = _empty_estimate(np.inf, growth, floor, corner=True)
        return PointClassification(
            verdict=VERDICT_CORNER, theta=s.theta, point=lam, is_corner=True,
            normal_cone_width=width, estimate=est, corner_widths=corner_widths)

    try:
        nb = normalize_at(work, theta0, base_point=base_point, eig_eps=eig_eps)
        verdict, est = classify_normalized(nb, num_scales, growth=growth,
                                           floor=floor, tail_len=tail_len)
    except ResolutionError:
        work = refine_near(work, theta0, levels=num_scales + 16)
        nb = normalize_at(work, theta0, base_point=base_point, eig_eps=eig_eps)
        verdict, est = classify_normalized(nb, num_scales, growth=growth,
                                           floor=floor, tail_len=tail_len)
    return PointClassification(
        verdict=verdict, theta=s.theta, point=lam, is_corner=False,
        normal_cone_width=width, estimate=est, corner_widths=corner_widths)
