import pytest
from hypothesis import given, strategies as st

from kaonic.bell import (
    MEASURED_DELTA,
    bell_check,
    epsilon_from_delta,
    leptonic_asymmetry,
    measured_preset,
    wigner_probabilities,
)
from kaonic.errors import InvalidArgumentError
from kaonic.states import CPWeights

eps_values = st.complex_numbers(max_magnitude=0.5, allow_nan=False, allow_infinity=False)


def _closed_form(eps):
    w = CPWeights.from_epsilon(eps)
    a2 = abs(eps) ** 2
    return abs(w.p) ** 2 / (2 * w.n**2), a2 / (2 * (1 + a2)), 0.25


def test_saturated_without_cp_violation():
    r = bell_check(CPWeights.from_epsilon(0))
    assert r.lhs == pytest.approx(0.25, abs=1e-12)
    assert r.rhs == pytest.approx(0.25, abs=1e-12)
    assert r.p_s_1 < 1e-30
    assert not r.violated and not r.reduced_bound_violated
    assert not r.mirrored_violated and not r.mirrored_reduced_bound_violated
    assert r.delta == 0


@given(eps_values)
def test_wigner_probabilities_closed_form(eps):
    got = wigner_probabilities(CPWeights.from_epsilon(eps))
    assert got == pytest.approx(_closed_form(eps), abs=1e-14)


@given(eps_values)
def test_direct_violation_criterion(eps):
    r = bell_check(CPWeights.from_epsilon(eps), tol=1e-12)
    margin = eps.real - abs(eps) ** 2
    if abs(margin) > 1e-9:
        assert r.violated == (margin > 0)


@given(st.floats(min_value=-0.5, max_value=0.5, allow_nan=False))
def test_real_epsilon_sign_equivalence(e):
    r = bell_check(CPWeights.from_epsilon(e), tol=1e-12)
    if abs(e) > 1e-9:
        assert r.reduced_bound_violated == (r.delta > 0)
        assert r.violated == (e > 0)
        assert r.mirrored_violated == (e < 0)


@given(eps_values)
def test_both_mirrored_bounds_hold_iff_no_asymmetry(eps):
    r = bell_check(CPWeights.from_epsilon(eps), tol=1e-12)
    both_hold = not r.reduced_bound_violated and not r.mirrored_reduced_bound_violated
    assert both_hold == (abs(r.abs_p - r.abs_q) <= 1e-12)
    assert (r.delta > 0) == (r.abs_p > r.abs_q)


def test_measured_asymmetry_violates():
    eps = measured_preset()
    assert eps.imag == 0
    assert eps.real == pytest.approx(1.6350e-3, abs=5e-8)
    r = bell_check(CPWeights.from_epsilon(eps))
    assert r.delta == pytest.approx(MEASURED_DELTA, abs=1e-10)
    assert r.abs_p > r.abs_q
    assert r.violated and r.reduced_bound_violated


@given(st.floats(min_value=-0.99, max_value=0.99, allow_nan=False))
def test_epsilon_from_delta_round_trip(delta):
    eps = epsilon_from_delta(delta)
    assert leptonic_asymmetry(CPWeights.from_epsilon(eps)) == pytest.approx(delta, abs=1e-14)
    assert abs(eps) < 1


@pytest.mark.parametrize("delta", [1.0, -1.0, 2.0, float("nan")])
def test_epsilon_from_delta_rejects(delta):
    with pytest.raises(InvalidArgumentError):
        epsilon_from_delta(delta)


def test_bell_check_rejects_bad_tolerance():
    with pytest.raises(InvalidArgumentError):
        bell_check(CPWeights.from_epsilon(0), tol=0)


def test_report_serializes():
    d = bell_check(CPWeights.from_epsilon(0.01)).to_dict()
    assert set(d) >= {"lhs", "rhs", "violated", "delta", "abs_p", "abs_q"}
