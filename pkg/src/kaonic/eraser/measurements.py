"""Active and passive measurements on a single kaon.

Lifetime measurements use the CP-conserving basis K_S = K1, K_L = K2; CP
violation (e.g. K_L -> 2 pi) is neglected here, as it is for the eraser.
Every sampler takes a numpy ``Generator`` and an optional ``size``; with
``size=None`` a scalar is returned, otherwise a numpy array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..evolution import scaled_propagator_matrix
from ..states import KaonState, PhysParams, cp_eigenstates

DEFAULT_CUT = 4.8

K0_LABEL, K0BAR_LABEL, KS_LABEL, KL_LABEL = "K0", "K0bar", "KS", "KL"
STRANGENESS_LABELS = (K0_LABEL, K0BAR_LABEL)
LIFETIME_LABELS = (KS_LABEL, KL_LABEL)


@dataclass(frozen=True)
class ActiveStrangeness:
    """Matter inserted in the beam at ``t_insert``."""

    t_insert: float
    basis = "strangeness"


@dataclass(frozen=True)
class ActiveLifetime:
    """Decay watched from ``t_obs``; decays within ``cut`` count as K_S."""

    t_obs: float
    cut: float = DEFAULT_CUT
    basis = "lifetime"


@dataclass(frozen=True)
class PassiveStrangeness:
    """Semileptonic decay: l+ tags K0, l- tags K0bar."""

    basis = "strangeness"


@dataclass(frozen=True)
class PassiveLifetime:
    """Pionic decay: 2 pi tags K_S, 3 pi tags K_L."""

    basis = "lifetime"


MeasurementKind = ActiveStrangeness | ActiveLifetime | PassiveStrangeness | PassiveLifetime


def lifetime_basis() -> np.ndarray:
    """Rows are <K_S| and <K_L| in the CP-conserving approximation."""
    k1, k2 = cp_eigenstates()
    return np.conj(np.vstack([k1.vector, k2.vector]))


def widths(params: PhysParams) -> np.ndarray:
    return np.array([params.gamma_s, params.gamma_l])


def exponential_times(u, rate) -> np.ndarray:
    """Inverse-CDF exponential variates; rate 0 gives +inf."""
    u = np.asarray(u, dtype=float)
    rate = np.asarray(rate, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(rate > 0, -np.log1p(-u) / np.where(rate > 0, rate, 1.0), np.inf)


def _unit(state: KaonState) -> np.ndarray:
    n2 = state.norm2
    if abs(n2 - 1.0) > 1e-12:
        raise InvalidArgumentError(f"measurement needs a normalized state, norm^2 = {n2!r}")
    return state.vector


def _out(values, size):
    return values[0].item() if size is None else values.reshape(size)


def _n(size) -> int:
    return 1 if size is None else int(np.prod(size))


def sample_decay_time(component: str, params: PhysParams, rng: np.random.Generator, size=None):
    """Exponential decay time of a K_S or K_L with rate Gamma_S or Gamma_L."""
    if component == KS_LABEL:
        rate = params.gamma_s
    elif component == KL_LABEL:
        rate = params.gamma_l
    else:
        raise InvalidArgumentError(f"component must be 'KS' or 'KL', got {component!r}")
    return _out(exponential_times(rng.random(_n(size)), rate), size)


def _pick(u, p_first) -> np.ndarray:
    """Index 0 where u < p_first, else 1."""
    return np.where(u < p_first, 0, 1)


def measure_active_strangeness(state: KaonState, rng: np.random.Generator, size=None):
    """Born-rule K0 / K0bar outcome, as in a strangeness-projecting absorber."""
    v = _unit(state)
    idx = _pick(rng.random(_n(size)), abs(v[0]) ** 2)
    return _out(np.array(STRANGENESS_LABELS)[idx], size)


def _sample_component(v: np.ndarray, u) -> np.ndarray:
    p_s = abs(lifetime_basis()[0] @ v) ** 2
    return _pick(u, p_s)


def measure_active_lifetime(
    state: KaonState, params: PhysParams, cut: float, rng: np.random.Generator, size=None
):
    """Classify by decay time: KS if the kaon decays within ``cut`` of the start.

    The true component is drawn first and its decay time after that, so
    misidentification of long-lived K_S and early-decaying K_L is part of the
    result.
    """
    if not cut > 0:
        raise InvalidArgumentError(f"cut must be > 0, got {cut!r}")
    v = _unit(state)
    n = _n(size)
    comp = _sample_component(v, rng.random(n))
    tau = exponential_times(rng.random(n), widths(params)[comp])
    return _out(np.array(LIFETIME_LABELS)[np.where(tau < cut, 0, 1)], size)


def measure_passive(
    state: KaonState, params: PhysParams, branching: float, rng: np.random.Generator, size=None
):
    """Let the kaon decay freely and read whichever observable its decay mode reveals.

    With probability ``branching`` the decay is semileptonic and the outcome
    is the strangeness at the decay time (Born rule on the surviving state);
    otherwise it is pionic and the outcome is the decaying component.

    Returns ``(kind, outcome)`` where kind is ``"PassiveStrangeness"`` or
    ``"PassiveLifetime"``.
    """
    if not 0.0 <= branching <= 1.0:
        raise InvalidArgumentError(f"branching must lie in [0, 1], got {branching!r}")
    v = _unit(state)
    n = _n(size)
    u = rng.random((n, 4))
    comp = _sample_component(v, u[:, 0])
    tau = exponential_times(u[:, 1], widths(params)[comp])
    semileptonic = u[:, 2] < branching

    finite = np.isfinite(tau)
    evolved = np.einsum("nij,j->ni", scaled_propagator_matrix(params.cp_conserving(), np.where(finite, tau, 0.0)), v)
    # a never-decaying kaon is pure K_L
    kl = cp_eigenstates()[1].vector
    evolved[~finite] = kl
    p_k0 = abs(evolved[:, 0]) ** 2 / np.sum(abs(evolved) ** 2, axis=1)
    strange = np.array(STRANGENESS_LABELS)[_pick(u[:, 3], p_k0)]
    life = np.array(LIFETIME_LABELS)[comp]

    kinds = np.where(semileptonic, "PassiveStrangeness", "PassiveLifetime")
    outcomes = np.where(semileptonic, strange, life)
    if size is None:
        return str(kinds[0]), str(outcomes[0])
    return kinds.reshape(size), outcomes.reshape(size)
