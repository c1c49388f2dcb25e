"""Run configuration shared by the CLI and the verification suites."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class RunConfig:
    """Tolerances and thresholds, overridable from the command line.

    ``refine_tol`` drives boundary refinement, ``num_scales`` the dyadic
    curvature ladder, ``divergence_growth`` / ``divergence_floor`` the
    infinite-curvature thresholds and ``angular_tol`` the minimal normal
    cone width that counts as a corner.
    """

    refine_tol: float = 1e-8
    num_scales: int = 24
    divergence_growth: float = 1.2
    divergence_floor: float = 1e3
    angular_tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.refine_tol <= 0 or self.divergence_growth <= 0 \
                or self.divergence_floor <= 0 or self.angular_tol <= 0:
            raise ValidationError("RunConfig values must be positive")
        if self.num_scales < 8:
            raise ValidationError("num_scales must be >= 8")
