"""Single kaons as a double slit: fringe visibility versus which-width predictability.

K_S and K_L play the role of the two slits.  CP violation is neglected
throughout; use :mod:`kaonic.evolution` directly for the exact-epsilon path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .states import PhysParams


@dataclass(frozen=True)
class DualityPoint:
    t: float
    visibility: float
    predictability: float
    phase: float
    mixedness: float = 1.0

    @property
    def residual(self) -> float:
        """P^2 + V^2 - mixedness^2 (zero for the modelled states)."""
        return self.predictability**2 + self.visibility**2 - self.mixedness**2


def _half_width_arg(params: PhysParams, t: float) -> float:
    t = float(t)
    if not t >= 0.0:
        raise InvalidArgumentError(f"time must be >= 0, got {t!r}")
    return 0.5 * params.delta_gamma * t


def _sech(x: float) -> float:
    # 1/cosh overflows past |x| ~ 710; this form does not
    e = math.exp(-abs(x))
    return 2.0 * e / (1.0 + e * e)


def visibility(params: PhysParams, t: float) -> float:
    """Fringe contrast 1/cosh(dGamma t / 2) of the strangeness oscillation."""
    return _sech(_half_width_arg(params, t))


def predictability(params: PhysParams, t: float) -> float:
    """Which-width knowledge |tanh(dGamma t / 2)| = |P(K_S, t) - P(K_L, t)|."""
    return abs(math.tanh(_half_width_arg(params, t)))


def oscillation_pattern(params: PhysParams, t: float) -> tuple[float, float]:
    """K0 / K0bar probabilities at t for surviving kaons that started as K0."""
    v = visibility(params, t)
    c = math.cos(params.delta_m * float(t))
    return 0.5 * (1.0 + c * v), 0.5 * (1.0 - c * v)


def duality_point(params: PhysParams, t: float, mixedness: float = 1.0) -> DualityPoint:
    if not 0.0 < mixedness <= 1.0:
        raise InvalidArgumentError(f"mixedness must lie in (0, 1], got {mixedness!r}")
    return DualityPoint(
        t=float(t),
        visibility=mixedness * visibility(params, t),
        predictability=mixedness * predictability(params, t),
        phase=params.delta_m * float(t),
        mixedness=mixedness,
    )


def duality_check(params: PhysParams, t_grid, mixedness: float = 1.0) -> list[DualityPoint]:
    """Evaluate V, P and the phase on a grid.

    ``mixedness`` < 1 scales both quantities, turning the pure-state equality
    into P^2 + V^2 = mixedness^2 < 1.  It is a bookkeeping hook and does not
    model any particular decoherence mechanism.
    """
    return [duality_point(params, t, mixedness) for t in np.asarray(t_grid, dtype=float).ravel()]


def max_duality_residual(points: list[DualityPoint]) -> float:
    return max((abs(p.residual) for p in points), default=0.0)
