"""Entangled kaon pairs.

Amplitudes are stored on the ordered basis ``(K0 K0, K0 K0bar, K0bar K0,
K0bar K0bar)`` with the left kaon as the first tensor factor, which is the
same as a 2x2 matrix ``M[left, right]`` in row-major order.  Each side keeps
its own clock so that left and right measurements can happen at different
times.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParameterError, InvalidArgumentError
from .evolution import propagator_matrix
from .states import NORM_TOL, CPWeights, KaonState, PhysParams, mass_eigenstates

LABELS = ("K0K0", "K0K0bar", "K0barK0", "K0barK0bar")


@dataclass(frozen=True, eq=False)
class PairState:
    amps: np.ndarray
    t_left: float = 0.0
    t_right: float = 0.0
    normalized: bool = False

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(4)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def matrix(self) -> np.ndarray:
        return self.amps.reshape(2, 2)

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def normalize(self) -> "PairState":
        n2 = self.norm2
        if n2 == 0.0:
            raise InvalidArgumentError("cannot normalize a zero pair state")
        return PairState(self.amps / math.sqrt(n2), self.t_left, self.t_right, True)

    def swap_sides(self) -> "PairState":
        return PairState(self.matrix.T.reshape(4), self.t_right, self.t_left, self.normalized)

    def __neg__(self) -> "PairState":
        return PairState(-self.amps, self.t_left, self.t_right, self.normalized)


def product_state(left: KaonState, right: KaonState) -> np.ndarray:
    return np.kron(left.vector, right.vector)


def lifetime_expansion(ps: PairState, w: CPWeights) -> np.ndarray:
    """Coefficients C[i, j] with ps = sum C[i, j] |i>_l |j>_r, i, j in (K_S, K_L).

    K_S and K_L are not orthogonal when |p| != |q|, so the coefficients come
    from inverting the basis matrix rather than from inner products.
    """
    ks, kl = mass_eigenstates(w)
    b = np.column_stack([ks.vector, kl.vector])
    b_inv = np.linalg.inv(b)
    return b_inv @ ps.matrix @ b_inv.T


def make_entangled_pair(w: CPWeights) -> PairState:
    """(|K0>|K0bar> - |K0bar>|K0>)/sqrt(2) at t_left = t_right = 0."""
    if w.p * w.q == 0:
        raise DegenerateParameterError("p q = 0: the K_S/K_L form of the pair is undefined")
    r = 1 / math.sqrt(2)
    ps = PairState(np.array([0, r, -r, 0]), 0.0, 0.0, True)
    n_sl = w.n**2 / (2 * w.p * w.q)
    c = lifetime_expansion(ps, w)
    expected = np.array([[0, n_sl * r], [-n_sl * r, 0]])
    if np.max(np.abs(c - expected)) > 1e-12 * max(1.0, abs(n_sl)):
        raise ArithmeticError("K_S/K_L re-expansion of the pair state disagrees with N_SL")
    return ps


def evolve_pair(ps: PairState, params: PhysParams, t_l: float, t_r: float) -> PairState:
    """Propagate each side independently from its current clock to t_l / t_r."""
    dt_l = float(t_l) - ps.t_left
    dt_r = float(t_r) - ps.t_right
    if dt_l < 0 or dt_r < 0:
        raise InvalidArgumentError(
            f"cannot evolve backwards: sides are at ({ps.t_left}, {ps.t_right}), asked for ({t_l}, {t_r})"
        )
    u_l = propagator_matrix(params, dt_l)
    u_r = propagator_matrix(params, dt_r)
    m = u_l @ ps.matrix @ u_r.T
    return PairState(m.reshape(4), float(t_l), float(t_r), False)


def _require_unit(state: KaonState, name: str) -> None:
    if abs(state.norm2 - 1.0) > NORM_TOL:
        raise InvalidArgumentError(f"{name} measurement state must be unit norm, has norm^2 {state.norm2!r}")


def joint_amplitude(ps: PairState, left: KaonState, right: KaonState) -> complex:
    """(<left| x <right|) ps."""
    return complex(np.conj(left.vector) @ ps.matrix @ np.conj(right.vector))


def joint_probability(
    ps: PairState,
    left: KaonState,
    right: KaonState,
    params: PhysParams,
    t_l: float,
    t_r: float,
) -> float:
    """Born probability of finding ``left`` at t_l and ``right`` at t_r.

    The evolved pair is not renormalized, so decays reduce the probability.
    """
    _require_unit(left, "left")
    _require_unit(right, "right")
    evolved = evolve_pair(ps, params, t_l, t_r)
    return abs(joint_amplitude(evolved, left, right)) ** 2


def joint_strangeness_probabilities(
    ps: PairState, params: PhysParams, t_l: float, t_r: float
) -> dict[str, float]:
    evolved = evolve_pair(ps, params, t_l, t_r)
    return {label: float(abs(a) ** 2) for label, a in zip(LABELS, evolved.amps)}


def condition_on(ps: PairState, side: str, outcome: KaonState) -> tuple[float, KaonState]:
    """Project one side onto ``outcome`` and return (probability, partner state).

    The probability is relative to ``ps`` as given (no renormalization of the
    pair); the partner state is renormalized and keeps the pair's clock for
    its side.
    """
    _require_unit(outcome, "outcome")
    bra = np.conj(outcome.vector)
    if side == "left":
        partner = bra @ ps.matrix
    elif side == "right":
        partner = ps.matrix @ bra
    else:
        raise InvalidArgumentError(f"side must be 'left' or 'right', got {side!r}")
    prob = float(np.vdot(partner, partner).real)
    if prob == 0.0:
        return 0.0, KaonState.from_vector(partner)
    return prob, KaonState.from_vector(partner / math.sqrt(prob), normalized=True)


def _survivor_phase(params: PhysParams, delta_t: float) -> complex:
    """exp(i dm dt) exp(dGamma dt / 2)."""
    return cmath.exp(1j * params.delta_m * delta_t + 0.5 * params.delta_gamma * delta_t)


def surviving_pair_state(params: PhysParams, delta_t: float) -> PairState:
    """Normalized state of pairs surviving to t_l, t_r with delta_t = t_l - t_r.

    (|K_L>|K_S> - z |K_S>|K_L>) / sqrt(1 + |z|^2), z = exp(i dm dt + dGamma dt / 2),
    with CP violation neglected (K_S = K1, K_L = K2).
    """
    delta_t = float(delta_t)
    z = _survivor_phase(params, delta_t)
    ks, kl = mass_eigenstates(CPWeights.from_epsilon(0))
    vec = product_state(kl, ks) - z * product_state(ks, kl)
    vec = vec / math.sqrt(1.0 + abs(z) ** 2)
    return PairState(vec, max(delta_t, 0.0), max(-delta_t, 0.0), True)


def surviving_pair_coefficients(params: PhysParams, delta_t: float) -> tuple[complex, complex]:
    """Strangeness-basis coefficients (same, opposite) of :func:`surviving_pair_state`.

    The state is ``same (|K0K0> - |K0barK0bar>) + opposite (|K0K0bar> - |K0barK0>)``
    with ``same = (1 - z) / n`` and ``opposite = -(1 + z) / n``.  The minus sign
    on ``opposite`` follows from expanding the K_S/K_L form; it does not change
    any strangeness probability.
    """
    z = _survivor_phase(params, float(delta_t))
    norm = 2.0 * math.sqrt(1.0 + abs(z) ** 2)
    return (1 - z) / norm, -(1 + z) / norm


def same_strangeness_probability(params: PhysParams, delta_t: float) -> float:
    """P(K0 K0) + P(K0bar K0bar) for surviving pairs."""
    same, _ = surviving_pair_coefficients(params, delta_t)
    return 2.0 * abs(same) ** 2


def distance_up_to_phase(a: PairState, b: PairState) -> float:
    """min over theta of max |a - exp(i theta) b| (component-wise)."""
    overlap = np.vdot(b.amps, a.amps)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.max(np.abs(a.amps - phase * b.amps)))
