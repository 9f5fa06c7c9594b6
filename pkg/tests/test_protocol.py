"""Protocol runs: measurement basis, corrections, fidelities, post-selection."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from telecloning import (
    DisentanglementParams,
    Outcome,
    OUTCOME_ORDER,
    build_channel,
    correction_for,
    modified_bell_basis,
    run_probabilistic,
    run_protocol,
    run_protocol_over_channel,
)
from telecloning.states import IDENTITY_2, SIGMA_X, SIGMA_Z, X, P

unit = st.floats(0.0, 1.0, allow_nan=False)


def haar_input(rng):
    u = rng.uniform()
    return np.sqrt(u), np.sqrt(1 - u) * np.exp(2j * np.pi * rng.uniform())


# ---------------------------------------------------------------------------
# measurement basis
# ---------------------------------------------------------------------------

def test_basis_at_unit_parameter_is_standard_bell():
    basis = modified_bell_basis(1.0)
    root2 = np.sqrt(2)
    np.testing.assert_allclose(basis.states[0].amplitudes, [1, 0, 0, 1] / np.array(root2))
    np.testing.assert_allclose(basis.states[1].amplitudes, [1, 0, 0, -1] / np.array(root2))
    np.testing.assert_allclose(basis.states[2].amplitudes, [0, 1, 1, 0] / np.array(root2))
    np.testing.assert_allclose(basis.states[3].amplitudes, [0, 1, -1, 0] / np.array(root2))


def test_basis_at_zero_parameter():
    basis = modified_bell_basis(0.0)
    np.testing.assert_allclose(basis.states[0].amplitudes, [1, 0, 0, 0])
    np.testing.assert_allclose(basis.states[1].amplitudes, [0, 0, 0, -1])
    np.testing.assert_allclose(basis.states[2].amplitudes, [0, 1, 0, 0])
    np.testing.assert_allclose(basis.states[3].amplitudes, [0, 0, -1, 0])


def test_basis_at_half_parameter():
    basis = modified_bell_basis(0.5)
    np.testing.assert_allclose(
        basis.states[0].amplitudes, np.array([1, 0, 0, 0.5]) / np.sqrt(1.25), atol=1e-15
    )
    assert abs(basis.states[0].overlap(basis.states[1])) < 1e-15


def test_basis_orthonormal_for_random_parameters():
    rng = np.random.default_rng(23)
    parameters = [rng.uniform(-2, 2) for _ in range(50)]
    parameters += [complex(rng.normal(), rng.normal()) for _ in range(50)]
    for m in parameters:
        rows = np.array([s.amplitudes for s in modified_bell_basis(m).states])
        gram = rows @ rows.conj().T
        assert np.max(np.abs(gram - np.eye(4))) < 1e-12


def test_correction_map():
    np.testing.assert_array_equal(correction_for(Outcome.PHI_PLUS), IDENTITY_2)
    np.testing.assert_array_equal(correction_for(Outcome.PHI_MINUS), SIGMA_Z)
    np.testing.assert_array_equal(correction_for(Outcome.PSI_PLUS), SIGMA_X)
    np.testing.assert_array_equal(correction_for(Outcome.PSI_MINUS), SIGMA_Z @ SIGMA_X)


def test_outcome_token_parsing():
    assert Outcome.from_token("phi-") is Outcome.PHI_MINUS
    assert Outcome.from_token(" PSI+ ") is Outcome.PSI_PLUS
    with pytest.raises(ValueError):
        Outcome.from_token("sigma")


# ---------------------------------------------------------------------------
# full runs
# ---------------------------------------------------------------------------

def test_ideal_point_is_input_independent():
    rng = np.random.default_rng(29)
    params = DisentanglementParams.ideal()
    for _ in range(100):
        alpha, beta = haar_input(rng)
        result = run_protocol(alpha, beta, params, 1.0)
        np.testing.assert_allclose(result.probabilities(), 0.25, atol=1e-12)
        np.testing.assert_allclose(result.fidelities(1), 5 / 6, atol=1e-12)
        np.testing.assert_allclose(result.fidelities(2), 5 / 6, atol=1e-12)


@pytest.mark.parametrize("n_p", [0.2, 0.5, 0.8])
def test_port_compensation_gives_optimal_fidelity_per_run(n_p):
    # with the measurement deformation matched to the port damping, the two
    # accepted outcomes restore the optimal fidelity exactly, for every input
    rng = np.random.default_rng(31)
    params = DisentanglementParams(n_p, 1, 1, 1)
    for _ in range(100):
        alpha, beta = haar_input(rng)
        result = run_protocol(alpha, beta, params, n_p)
        for outcome in (Outcome.PHI_MINUS, Outcome.PSI_PLUS):
            record = result.record_for(outcome)
            assert abs(record.fidelity_1 - 5 / 6) < 1e-12
            assert abs(record.fidelity_2 - 5 / 6) < 1e-12


@given(n_p=unit, n_a=unit, n_c1=unit, n_c2=unit, m=unit, theta=st.floats(0, np.pi))
def test_probabilities_sum_to_one(n_p, n_a, n_c1, n_c2, m, theta):
    alpha, beta = np.cos(theta / 2), np.sin(theta / 2)
    result = run_protocol(alpha, beta, DisentanglementParams(n_p, n_a, n_c1, n_c2), m)
    assert abs(result.probabilities().sum() - 1.0) < 1e-12


@given(n_c1=unit, n_c2=unit, m=unit)
def test_copy_two_equals_copy_one_with_swapped_strengths(n_c1, n_c2, m):
    alpha, beta = 0.6, 0.8
    params = DisentanglementParams(0.7, 0.9, n_c1, n_c2)
    direct = run_protocol(alpha, beta, params, m)
    swapped = run_protocol(alpha, beta, params.swap_copies(), m)
    f2 = direct.fidelities(2)
    f1 = swapped.fidelities(1)
    mask = ~np.isnan(f2)
    np.testing.assert_allclose(f2[mask], f1[mask], atol=1e-12)
    np.testing.assert_allclose(direct.probabilities(), swapped.probabilities(), atol=1e-12)


def test_zero_probability_branches_are_flagged():
    # |0> through the product channel: the psi outcomes cannot occur
    result = run_protocol(1.0, 0.0, DisentanglementParams(1, 1, 0, 0), 1.0)
    for outcome in (Outcome.PSI_PLUS, Outcome.PSI_MINUS):
        record = result.record_for(outcome)
        assert record.probability < 1e-14
        assert record.remainder is None
        assert record.rho_1 is None and record.fidelity_1 is None
    for outcome in (Outcome.PHI_PLUS, Outcome.PHI_MINUS):
        record = result.record_for(outcome)
        assert abs(record.probability - 0.5) < 1e-12
        assert abs(record.fidelity_1 - 1.0) < 1e-12  # teleporting |0> over |00..>


def test_remainder_states_are_normalized():
    result = run_protocol(0.6, 0.8, DisentanglementParams(0.5, 0.8, 0.9, 0.4), 0.7)
    for record in result.records:
        if record.remainder is not None:
            assert abs(record.remainder.norm() - 1.0) < 1e-12
            assert record.remainder.register == ("A", "C1", "C2")


def test_input_validation():
    with pytest.raises(ValueError, match="not normalized"):
        run_protocol(0.6, 0.7, DisentanglementParams.ideal(), 1.0)


def test_run_over_channel_accepts_permuted_registers():
    channel = build_channel(DisentanglementParams(0.5, 1, 1, 1))
    permuted = channel.reorder(("C2", "A", "P", "C1"))
    a = run_protocol_over_channel(0.6, 0.8, channel, 0.5)
    b = run_protocol_over_channel(0.6, 0.8, permuted, 0.5)
    np.testing.assert_allclose(a.probabilities(), b.probabilities(), atol=1e-14)


# ---------------------------------------------------------------------------
# post-selection
# ---------------------------------------------------------------------------

def test_accepting_everything_always_succeeds():
    result = run_probabilistic(0.6, 0.8, DisentanglementParams.ideal(), 1.0, tuple(Outcome))
    assert abs(result.success_probability - 1.0) < 1e-12


def test_ideal_two_outcome_success_probability():
    result = run_probabilistic(
        0.6, 0.8, DisentanglementParams.ideal(), 1.0, (Outcome.PHI_MINUS, Outcome.PSI_PLUS)
    )
    assert abs(result.success_probability - 0.5) < 1e-12
    for record in result.records:
        assert abs(record.probability - 0.5) < 1e-12  # conditioned on acceptance


def test_port_matched_success_probability_against_born_oracle():
    # success = P(phi-) + P(psi+) summed by hand from raw projections
    n_p = 0.5
    alpha, beta = 0.6, 0.8
    params = DisentanglementParams(n_p, 1, 1, 1)
    joint = np.kron(np.array([alpha, beta]), build_channel(params).amplitudes)
    scale = 1 / np.sqrt(1 + n_p**2)
    phi_minus = scale * np.array([n_p, 0, 0, -1], dtype=complex)
    psi_plus = scale * np.array([0, 1, n_p, 0], dtype=complex)
    expected = sum(
        float(np.linalg.norm(b.conj() @ joint.reshape(4, 8)) ** 2)
        for b in (phi_minus, psi_plus)
    )
    result = run_probabilistic(alpha, beta, params, n_p, (Outcome.PHI_MINUS, Outcome.PSI_PLUS))
    assert abs(result.success_probability - expected) < 1e-12
    # the closed-form value for this slice: 2 nP^2 / (1 + nP^2)^2
    assert abs(result.success_probability - 2 * n_p**2 / (1 + n_p**2) ** 2) < 1e-12
    for record in result.records:
        assert abs(record.fidelity_1 - 5 / 6) < 1e-12


def test_post_selection_validates():
    with pytest.raises(ValueError, match="non-empty"):
        run_probabilistic(0.6, 0.8, DisentanglementParams.ideal(), 1.0, ())
    with pytest.raises(ValueError, match="zero total probability"):
        run_probabilistic(
            1.0, 0.0, DisentanglementParams(1, 1, 0, 0), 1.0, (Outcome.PSI_PLUS,)
        )


def test_outcome_order_is_stable():
    result = run_protocol(1.0, 0.0, DisentanglementParams.ideal(), 1.0)
    assert tuple(r.outcome for r in result.records) == OUTCOME_ORDER
