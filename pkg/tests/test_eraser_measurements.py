import math

import numpy as np
import pytest

from kaonic.errors import InvalidArgumentError
from kaonic.eraser.measurements import (
    DEFAULT_CUT,
    ActiveLifetime,
    exponential_times,
    measure_active_lifetime,
    measure_active_strangeness,
    measure_passive,
    sample_decay_time,
)
from kaonic.states import K0, K0BAR, PhysParams, cp_eigenstates, quasi_spin_state

N = 200_000


def _within(count, n, p, k=4.0):
    sigma = math.sqrt(n * p * (1 - p))
    return abs(count - n * p) <= k * max(sigma, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def test_default_cut():
    assert DEFAULT_CUT == 4.8
    assert ActiveLifetime(1.0).cut == 4.8


def test_decay_time_moments(params, rng):
    ks = sample_decay_time("KS", params, rng, size=N)
    assert abs(ks.mean() - 1.0) < 4 / math.sqrt(N)
    kl = sample_decay_time("KL", params, rng, size=N)
    mean_l = 1 / params.gamma_l
    assert abs(kl.mean() - mean_l) < 4 * mean_l / math.sqrt(N)
    early = np.count_nonzero(kl < 4.8)
    assert _within(early, N, 1 - math.exp(-4.8 * params.gamma_l))
    assert isinstance(sample_decay_time("KS", params, rng), float)
    with pytest.raises(InvalidArgumentError):
        sample_decay_time("K1", params, rng)


def test_exponential_times_zero_rate():
    assert exponential_times(0.5, 0.0) == np.inf
    assert exponential_times(0.0, 2.0) == 0.0


def test_active_strangeness(rng):
    assert set(measure_active_strangeness(K0, rng, size=1000)) == {"K0"}
    assert set(measure_active_strangeness(K0BAR, rng, size=1000)) == {"K0bar"}
    k1, _ = cp_eigenstates()
    out = measure_active_strangeness(k1, rng, size=N)
    assert _within(np.count_nonzero(out == "K0"), N, 0.5)
    s = quasi_spin_state(3, 4j)
    out = measure_active_strangeness(s, rng, size=N)
    assert _within(np.count_nonzero(out == "K0"), N, 9 / 25)
    assert measure_active_strangeness(K0, rng) == "K0"


def test_active_strangeness_needs_unit_state(rng):
    from kaonic.states import KaonState

    with pytest.raises(InvalidArgumentError):
        measure_active_strangeness(KaonState(1, 1), rng)


def test_active_lifetime_misidentification(params, rng):
    k1, k2 = cp_eigenstates()
    ks_out = measure_active_lifetime(k1, params, 4.8, rng, size=N)
    assert _within(np.count_nonzero(ks_out == "KS"), N, 1 - math.exp(-4.8))
    kl_out = measure_active_lifetime(k2, params, 4.8, rng, size=N)
    p_mis = 1 - math.exp(-4.8 * params.gamma_l)
    assert p_mis == pytest.approx(8.2e-3, abs=1e-4)
    assert _within(np.count_nonzero(kl_out == "KS"), N, p_mis)
    huge = measure_active_lifetime(k1, params, 1e9, rng, size=1000)
    assert set(huge) == {"KS"}
    with pytest.raises(InvalidArgumentError):
        measure_active_lifetime(k1, params, 0.0, rng)


def test_passive_branching_limits(params, rng):
    kinds, _ = measure_passive(K0, params, 0.0, rng, size=1000)
    assert set(kinds) == {"PassiveLifetime"}
    kinds, outcomes = measure_passive(K0, params, 1.0, rng, size=1000)
    assert set(kinds) == {"PassiveStrangeness"}
    assert set(outcomes) <= {"K0", "K0bar"}
    with pytest.raises(InvalidArgumentError):
        measure_passive(K0, params, 1.5, rng)


def test_passive_on_k1(params, rng):
    k1, _ = cp_eigenstates()
    kinds, outcomes = measure_passive(k1, params, 0.5, rng, size=N)
    counts = {lbl: np.count_nonzero(outcomes == lbl) for lbl in ("KS", "KL", "K0", "K0bar")}
    # a K1 is a pure K_S: pionic decays are all 2 pi, semileptonic ones split evenly
    assert counts["KL"] == 0
    assert _within(counts["KS"], N, 0.5)
    assert _within(counts["K0"], N, 0.25)
    assert _within(counts["K0bar"], N, 0.25)
    assert np.all((kinds == "PassiveLifetime") == np.isin(outcomes, ["KS", "KL"]))


def test_passive_on_k0_semileptonic(params, rng):
    from scipy.integrate import quad

    from kaonic.complementarity import oscillation_pattern

    # the component is drawn 50/50, then the Born rule is applied at its decay time
    def mean_p_k0(rate):
        excess = quad(lambda t: rate * math.exp(-rate * t) * (oscillation_pattern(params, t)[0] - 0.5), 0, 200, limit=400)
        return 0.5 + excess[0]

    expected = 0.5 * (mean_p_k0(params.gamma_s) + mean_p_k0(params.gamma_l))
    _, outcomes = measure_passive(K0, params, 1.0, rng, size=N)
    assert _within(np.count_nonzero(outcomes == "K0"), N, expected)
    kind, outcome = measure_passive(K0, params, 0.5, rng)
    assert isinstance(kind, str) and isinstance(outcome, str)
