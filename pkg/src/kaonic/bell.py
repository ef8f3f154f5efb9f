"""Wigner-type Bell inequality for kaon pairs at t = 0 and its link to CP violation.

The inequality compares three joint probabilities on the initial pair state,

    P(K_S, K0bar) <= P(K_S, K1) + P(K1, K0bar),

where the first argument is measured on the left kaon and the second on the
right.  It is saturated when CP is conserved.  The reduced form |p| <= |q| is
equivalent to a non-positive leptonic charge asymmetry, which experiment
contradicts.  Both forms are evaluated independently.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import InvalidArgumentError
from .pair import joint_amplitude, make_entangled_pair
from .states import K0, K0BAR, CPWeights, cp_eigenstates, mass_eigenstates

DEFAULT_TOL = 1e-12
MEASURED_DELTA = 3.27e-3


@dataclass(frozen=True)
class BellReport:
    p_s_b: float
    p_s_1: float
    p_1_b: float
    lhs: float
    rhs: float
    violated: bool
    delta: float
    abs_p: float
    abs_q: float
    reduced_bound_violated: bool
    # same inequality with K0bar replaced by K0
    p_s_k0: float
    p_1_k0: float
    mirrored_lhs: float
    mirrored_rhs: float
    mirrored_violated: bool
    mirrored_reduced_bound_violated: bool
    tol: float

    def to_dict(self) -> dict:
        return asdict(self)


def _probability(left, right, w: CPWeights) -> float:
    return abs(joint_amplitude(make_entangled_pair(w), left, right)) ** 2


def wigner_probabilities(w: CPWeights) -> tuple[float, float, float]:
    """(P(K_S, K0bar), P(K_S, K1), P(K1, K0bar)) on the t = 0 pair."""
    ks, _ = mass_eigenstates(w)
    k1, _ = cp_eigenstates()
    return _probability(ks, K0BAR, w), _probability(ks, k1, w), _probability(k1, K0BAR, w)


def leptonic_asymmetry(w: CPWeights) -> float:
    """delta = (|p|^2 - |q|^2) / (|p|^2 + |q|^2)."""
    p2, q2 = abs(w.p) ** 2, abs(w.q) ** 2
    return (p2 - q2) / (p2 + q2)


def epsilon_from_delta(delta: float) -> complex:
    """Real epsilon with leptonic asymmetry ``delta``.

    Solves 2 eps / (1 + eps^2) = delta for the root with |eps| < 1, written in
    the cancellation-free form delta / (1 + sqrt(1 - delta^2)).
    """
    delta = float(delta)
    if not abs(delta) < 1.0:
        raise InvalidArgumentError(f"need |delta| < 1, got {delta!r}")
    return complex(delta / (1.0 + math.sqrt(1.0 - delta * delta)), 0.0)


def bell_check(w: CPWeights, tol: float = DEFAULT_TOL) -> BellReport:
    if not tol > 0:
        raise InvalidArgumentError(f"tol must be > 0, got {tol!r}")
    p_s_b, p_s_1, p_1_b = wigner_probabilities(w)
    lhs, rhs = p_s_b, p_s_1 + p_1_b

    ks, _ = mass_eigenstates(w)
    k1, _ = cp_eigenstates()
    p_s_k0 = _probability(ks, K0, w)
    p_1_k0 = _probability(k1, K0, w)
    m_lhs, m_rhs = p_s_k0, p_s_1 + p_1_k0

    abs_p, abs_q = abs(w.p), abs(w.q)
    return BellReport(
        p_s_b=p_s_b,
        p_s_1=p_s_1,
        p_1_b=p_1_b,
        lhs=lhs,
        rhs=rhs,
        violated=lhs > rhs + tol,
        delta=leptonic_asymmetry(w),
        abs_p=abs_p,
        abs_q=abs_q,
        reduced_bound_violated=abs_p > abs_q + tol,
        p_s_k0=p_s_k0,
        p_1_k0=p_1_k0,
        mirrored_lhs=m_lhs,
        mirrored_rhs=m_rhs,
        mirrored_violated=m_lhs > m_rhs + tol,
        mirrored_reduced_bound_violated=abs_q > abs_p + tol,
        tol=tol,
    )


def measured_preset() -> complex:
    """Real epsilon reproducing the measured leptonic asymmetry."""
    return epsilon_from_delta(MEASURED_DELTA)
