"""Single-kaon Wigner-Weisskopf time evolution.

The closed form is the production path.  :func:`matexp_oracle` exponentiates
the effective Hamiltonian directly and shares no code with it, so the two can
be checked against each other for any parameter set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, SurvivalUnderflowError
from .states import EffectiveHamiltonian, KaonState, PhysParams

SURVIVAL_FLOOR = 1e-300

# Taylor order for a scaled matrix with 1-norm <= 1: the tail is below 1/21! ~ 2e-20.
TAYLOR_ORDER = 20


@dataclass(frozen=True)
class PropagatorPair:
    g_plus: complex
    g_minus: complex
    t: float


def _check_time(t: float) -> float:
    t = float(t)
    if not t >= 0.0:
        raise InvalidArgumentError(f"time must be >= 0, got {t!r}")
    return t


def propagators(params: PhysParams, t: float) -> PropagatorPair:
    """g_pm(t) = (+-exp(-i lambda_S t) + exp(-i lambda_L t)) / 2."""
    t = _check_time(t)
    e_s = np.exp(-1j * params.lambda_s * t)
    e_l = np.exp(-1j * params.lambda_l * t)
    return PropagatorPair(complex(0.5 * (e_s + e_l)), complex(0.5 * (-e_s + e_l)), t)


def propagator_matrix(params: PhysParams, t) -> np.ndarray:
    """Evolution operator in the strangeness basis.

    Column ``j`` is the image of basis state ``j``.  ``t`` may be an array, in
    which case the result has shape ``t.shape + (2, 2)``.
    """
    t = np.asarray(t, dtype=float)
    if np.any(~(t >= 0.0)):
        raise InvalidArgumentError("times must be >= 0")
    w = params.weights()
    q_p, p_q = w.q_over_p(), w.p_over_q()
    e_s = np.exp(-1j * params.lambda_s * t)
    e_l = np.exp(-1j * params.lambda_l * t)
    gp = 0.5 * (e_s + e_l)
    gm = 0.5 * (e_l - e_s)
    u = np.empty(t.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = gp
    u[..., 1, 0] = q_p * gm
    u[..., 0, 1] = p_q * gm
    u[..., 1, 1] = gp
    return u


def scaled_propagator_matrix(params: PhysParams, t) -> np.ndarray:
    """exp(i lambda_L t) times :func:`propagator_matrix`.

    Entries stay O(1) at any t, so ratios of amplitudes survive where the
    unscaled operator underflows.  The dropped factor is common to both
    components and cancels on renormalization.
    """
    t = np.asarray(t, dtype=float)
    if np.any(~(t >= 0.0)):
        raise InvalidArgumentError("times must be >= 0")
    w = params.weights()
    q_p, p_q = w.q_over_p(), w.p_over_q()
    rel = np.exp(-1j * (params.lambda_s - params.lambda_l) * t)
    gp = 0.5 * (rel + 1.0)
    gm = 0.5 * (1.0 - rel)
    u = np.empty(t.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = gp
    u[..., 1, 0] = q_p * gm
    u[..., 0, 1] = p_q * gm
    u[..., 1, 1] = gp
    return u


def evolve(state: KaonState, params: PhysParams, t: float) -> KaonState:
    """Apply K0 -> g+ K0 + (q/p) g- K0bar and K0bar -> (p/q) g- K0 + g+ K0bar.

    The result is not renormalized; its squared norm is the survival
    probability.
    """
    u = propagator_matrix(params, _check_time(t))
    return KaonState.from_vector(u @ state.vector, normalized=False)


def survival_probability(state: KaonState, params: PhysParams, t: float) -> float:
    return evolve(state, params, t).norm2


def strangeness_probabilities(params: PhysParams, t: float) -> tuple[float, float]:
    """Probabilities of finding K0 and K0bar at time t in an initially pure K0 beam."""
    t = _check_time(t)
    w = params.weights()
    e_s = math.exp(-params.gamma_s * t)
    e_l = math.exp(-params.gamma_l * t)
    interference = 2.0 * math.exp(-params.gamma_mean * t) * math.cos(params.delta_m * t)
    ratio = abs(w.q_over_p()) ** 2
    p_k0 = 0.25 * (e_s + e_l + interference)
    p_k0bar = 0.25 * ratio * (e_s + e_l - interference)
    return p_k0, p_k0bar


def normalized_survivor(state: KaonState, params: PhysParams, t: float) -> KaonState:
    """Evolve and renormalize, i.e. the state of kaons that have not decayed by t."""
    evolved = evolve(state, params, t)
    n2 = evolved.norm2
    if n2 < SURVIVAL_FLOOR:
        raise SurvivalUnderflowError(
            f"survival probability {n2:.3g} at t={t} is below {SURVIVAL_FLOOR:g}; use a smaller t"
        )
    return evolved.normalize()


def expm_taylor(a: np.ndarray) -> np.ndarray:
    """exp(a) for a small dense matrix by scaling and squaring a Taylor series.

    ``a`` is scaled by 2**-s so its 1-norm is at most 1, the series is summed
    to order :data:`TAYLOR_ORDER`, and the result is squared s times.
    """
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a, 1)
    s = 0 if norm <= 1.0 else int(math.ceil(math.log2(norm)))
    scaled = a / (2.0**s)
    result = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, TAYLOR_ORDER + 1):
        term = term @ scaled / k
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def matexp_oracle(h: EffectiveHamiltonian, state: KaonState, t: float) -> KaonState:
    """exp(-i H t) applied to ``state`` (unnormalized)."""
    t = _check_time(t)
    u = expm_taylor(-1j * h.matrix * t)
    return KaonState.from_vector(u @ state.vector, normalized=False)
