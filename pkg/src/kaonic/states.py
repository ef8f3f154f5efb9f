"""Kaon basis states, CP weights, physical constants and the effective Hamiltonian.

Conventions
-----------
* Basis order is ``(K0, K0bar)``; strangeness is ``sigma_3`` and CP is ``-sigma_1``.
* Time is measured in units of the short lifetime tau_S, widths in units of
  Gamma_S, so ``gamma_s == 1`` for physical parameter sets.
* Only the mass difference is physical.  The common mass is a global phase and
  is set to zero, i.e. ``m_S = -delta_m / 2`` and ``m_L = +delta_m / 2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateParameterError, InvalidArgumentError

# Values quoted for the neutral kaon system (seconds, eV).
TAU_S_SECONDS = 0.89e-10
TAU_L_SECONDS = 5.17e-8
DELTA_M_EV = 3.49e-6
DELTA_M_TAU_S = 0.47
HBAR_EV_S = 6.582119569e-16  # CODATA 2018

NORM_TOL = 1e-12

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)

STRANGENESS = SIGMA_3
CP = -SIGMA_1


@dataclass(frozen=True)
class PhysParams:
    """Dimensionless neutral-kaon constants (tau_S = 1).

    ``gamma_s == gamma_l == 0`` is accepted so that the stable-kaon limit used
    for the EPR correlations can be expressed with the same type.
    """

    delta_m: float = DELTA_M_TAU_S
    gamma_s: float = 1.0
    gamma_l: float = TAU_S_SECONDS / TAU_L_SECONDS
    epsilon: complex = 0j

    def __post_init__(self):
        if not (self.gamma_s >= self.gamma_l >= 0.0):
            raise InvalidArgumentError(
                f"need gamma_s >= gamma_l >= 0, got gamma_s={self.gamma_s}, gamma_l={self.gamma_l}"
            )
        if not math.isfinite(self.delta_m):
            raise InvalidArgumentError("delta_m must be finite")
        object.__setattr__(self, "epsilon", complex(self.epsilon))

    @classmethod
    def stable(cls, delta_m: float = DELTA_M_TAU_S, epsilon: complex = 0j) -> "PhysParams":
        """Non-decaying kaons with the same mass splitting."""
        return cls(delta_m=delta_m, gamma_s=0.0, gamma_l=0.0, epsilon=epsilon)

    @property
    def delta_gamma(self) -> float:
        """Gamma_L - Gamma_S (negative for physical kaons)."""
        return self.gamma_l - self.gamma_s

    @property
    def gamma_mean(self) -> float:
        return 0.5 * (self.gamma_l + self.gamma_s)

    @property
    def m_s(self) -> float:
        return -0.5 * self.delta_m

    @property
    def m_l(self) -> float:
        return 0.5 * self.delta_m

    @property
    def lambda_s(self) -> complex:
        return complex(self.m_s, -0.5 * self.gamma_s)

    @property
    def lambda_l(self) -> complex:
        return complex(self.m_l, -0.5 * self.gamma_l)

    def weights(self) -> "CPWeights":
        return CPWeights.from_epsilon(self.epsilon)

    def cp_conserving(self) -> "PhysParams":
        return PhysParams(self.delta_m, self.gamma_s, self.gamma_l, 0j)


@dataclass(frozen=True)
class CPWeights:
    """Weights p = 1 + eps, q = 1 - eps and N = sqrt(|p|^2 + |q|^2)."""

    p: complex
    q: complex
    n: float

    @classmethod
    def from_epsilon(cls, epsilon: complex) -> "CPWeights":
        eps = complex(epsilon)
        p, q = 1 + eps, 1 - eps
        return cls(p, q, math.sqrt(abs(p) ** 2 + abs(q) ** 2))

    @property
    def epsilon(self) -> complex:
        return 0.5 * (self.p - self.q)

    def q_over_p(self) -> complex:
        if self.p == 0:
            raise DegenerateParameterError("p = 0: q/p is undefined (epsilon = -1)")
        return self.q / self.p

    def p_over_q(self) -> complex:
        if self.q == 0:
            raise DegenerateParameterError("q = 0: p/q is undefined (epsilon = +1)")
        return self.p / self.q


@dataclass(frozen=True)
class KaonState:
    """Single-kaon amplitude vector ``amp_k0 |K0> + amp_k0bar |K0bar>``."""

    amp_k0: complex
    amp_k0bar: complex
    normalized: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "amp_k0", complex(self.amp_k0))
        object.__setattr__(self, "amp_k0bar", complex(self.amp_k0bar))
        if self.normalized and abs(self.norm2 - 1.0) > NORM_TOL:
            raise InvalidArgumentError(f"state flagged normalized has norm^2 {self.norm2!r}")

    @classmethod
    def from_vector(cls, vec, normalized: bool = False) -> "KaonState":
        a, b = np.asarray(vec, dtype=complex).reshape(2)
        return cls(a, b, normalized)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp_k0, self.amp_k0bar], dtype=complex)

    @property
    def norm2(self) -> float:
        return abs(self.amp_k0) ** 2 + abs(self.amp_k0bar) ** 2

    def normalize(self) -> "KaonState":
        n2 = self.norm2
        if n2 == 0.0:
            raise InvalidArgumentError("cannot normalize the zero vector")
        s = 1.0 / math.sqrt(n2)
        return KaonState(self.amp_k0 * s, self.amp_k0bar * s, True)

    def inner(self, other: "KaonState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.vector, other.vector))

    def expectation(self, op: np.ndarray) -> complex:
        v = self.vector
        return complex(np.vdot(v, op @ v) / np.vdot(v, v))

    def strangeness(self) -> float:
        return self.expectation(STRANGENESS).real


K0 = KaonState(1, 0, True)
K0BAR = KaonState(0, 1, True)


def cp_eigenstates() -> tuple[KaonState, KaonState]:
    """Return (K1, K2), the CP = +1 and CP = -1 eigenstates."""
    r = 1 / math.sqrt(2)
    return KaonState(r, -r, True), KaonState(r, r, True)


def mass_eigenstates(w: CPWeights) -> tuple[KaonState, KaonState]:
    """Return (K_S, K_L) = ((p K0 - q K0bar)/N, (p K0 + q K0bar)/N)."""
    if w.n == 0:
        raise DegenerateParameterError("N = 0")
    # N is built from |p| and |q|, so these are unit norm up to rounding
    ks = KaonState(w.p / w.n, -w.q / w.n, normalized=True)
    kl = KaonState(w.p / w.n, w.q / w.n, normalized=True)
    return ks, kl


def quasi_spin_state(a: complex, b: complex) -> KaonState:
    """Normalized ``a|K0> + b|K0bar>``."""
    if a == 0 and b == 0:
        raise InvalidArgumentError("quasi-spin state needs (a, b) != (0, 0)")
    return KaonState(a, b).normalize()


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """H = a*1 + b (cos(alpha) sigma_1 + sin(alpha) sigma_2) in the strangeness basis.

    ``alpha`` is complex whenever |p| != |q|; ``exp(1j*alpha) == q/p`` holds
    in every case.
    """

    matrix: np.ndarray
    a_coef: complex
    b_coef: complex
    alpha: complex

    @property
    def b_vector(self) -> tuple[complex, complex, complex]:
        return (
            self.b_coef * cmath.cos(self.alpha),
            self.b_coef * cmath.sin(self.alpha),
            0j,
        )

    def pauli_components(self) -> np.ndarray:
        """(h0, h1, h2, h3) with H = sum h_k sigma_k, read back from the matrix."""
        m = self.matrix
        return np.array(
            [
                0.5 * (m[0, 0] + m[1, 1]),
                0.5 * (m[0, 1] + m[1, 0]),
                0.5j * (m[0, 1] - m[1, 0]),
                0.5 * (m[0, 0] - m[1, 1]),
            ]
        )


def effective_hamiltonian(
    params: PhysParams, m_s: float | None = None, m_l: float | None = None
) -> EffectiveHamiltonian:
    """Build the non-Hermitian mass matrix whose eigenvectors are K_S and K_L.

    The masses default to the symmetric convention of :class:`PhysParams`;
    pass both to pick another common mass (it only adds a global phase).
    """
    if (m_s is None) != (m_l is None):
        raise InvalidArgumentError("give both m_s and m_l or neither")
    if m_s is None:
        m_s, m_l = params.m_s, params.m_l
    lam_s = complex(m_s, -0.5 * params.gamma_s)
    lam_l = complex(m_l, -0.5 * params.gamma_l)
    w = params.weights()
    e_ia = w.q_over_p()
    alpha = -1j * cmath.log(e_ia)
    a = 0.5 * (lam_l + lam_s)
    b = 0.5 * (lam_l - lam_s)
    # b (cos a s1 + sin a s2) has off-diagonals b e^{-i alpha} and b e^{+i alpha}
    matrix = np.array([[a, b / e_ia], [b * e_ia, a]], dtype=complex)
    return EffectiveHamiltonian(matrix, a, b, alpha)
