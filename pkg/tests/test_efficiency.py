"""Averaged efficiency: closed forms vs moment-average oracle vs Monte Carlo."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from telecloning import (
    DisentanglementParams,
    HAAR_MOMENTS,
    InputMoments,
    ancilla_efficiency,
    average_fidelity_probability,
    average_probabilities,
    best_measurement_param_for_copies,
    born_values,
    build_channel,
    closed_form_pair,
    closed_form_single,
    copy_efficiency,
    closed_form_report,
    moment_average_report,
    moment_average_values,
    monte_carlo_efficiency,
    monte_carlo_report,
    pair_concurrence,
    port_efficiency,
    protocol_efficiency,
    run_protocol,
    sample_haar_inputs,
)

unit = st.floats(0.0, 1.0, allow_nan=False)

IDEAL = DisentanglementParams.ideal()


def random_point(rng):
    values = rng.uniform(0.0, 1.0, 5)
    return DisentanglementParams(*values[:4]), float(values[4])


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def test_haar_moment_values():
    assert HAAR_MOMENTS == InputMoments(0.5, 1 / 3, 1 / 6)


def test_inconsistent_moments_rejected():
    with pytest.raises(ValueError, match="mab"):
        InputMoments(0.5, 1 / 3, 0.2)


def test_sampled_moments_match_haar_values():
    rng = np.random.default_rng(101)
    alphas, _ = sample_haar_inputs(rng, 400_000)
    u = np.abs(alphas) ** 2
    for observed, expected in ((u, 0.5), (u**2, 1 / 3), (u * (1 - u), 1 / 6)):
        stderr = observed.std(ddof=0) / np.sqrt(observed.size)
        assert abs(observed.mean() - expected) < 4 * stderr + 1e-12


# ---------------------------------------------------------------------------
# closed forms at pinned points
# ---------------------------------------------------------------------------

def test_ideal_point_closed_forms():
    np.testing.assert_allclose(average_probabilities(IDEAL, 1.0), 0.25, atol=1e-15)
    np.testing.assert_allclose(average_fidelity_probability(IDEAL, 1.0, 1), 5 / 24, atol=1e-15)
    np.testing.assert_allclose(average_fidelity_probability(IDEAL, 1.0, 2), 5 / 24, atol=1e-15)
    assert abs(protocol_efficiency(IDEAL, 1.0) - 5 / 6) < 1e-12


def test_degenerate_measurement_probabilities_stay_uniform():
    np.testing.assert_allclose(average_probabilities(IDEAL, 0.0), 0.25, atol=1e-15)


def test_dead_copies_efficiency_is_two_thirds():
    params = DisentanglementParams(1, 1, 0, 0)
    assert abs(protocol_efficiency(params, 1.0) - 2 / 3) < 1e-12
    assert abs(sum(average_fidelity_probability(params, 1.0, 1)) - 2 / 3) < 1e-12


def test_dead_port_efficiency():
    assert abs(protocol_efficiency(DisentanglementParams(0, 1, 1, 1), 1.0) - 11 / 18) < 1e-12
    assert abs(port_efficiency(0.0, 1.0) - 11 / 18) < 1e-12


@given(n_p=unit, n_a=unit, n_c1=unit, n_c2=unit, m=unit)
def test_average_probabilities_sum_to_one(n_p, n_a, n_c1, n_c2, m):
    total = average_probabilities(DisentanglementParams(n_p, n_a, n_c1, n_c2), m).sum()
    assert abs(total - 1.0) < 1e-12


def test_port_formula_matches_general_form():
    for t in np.linspace(0, 1, 11):
        for m in (0.0, 0.3, 0.7, 1.0):
            general = protocol_efficiency(DisentanglementParams(t, 1, 1, 1), m)
            assert abs(general - port_efficiency(t, m)) < 1e-12


def test_ancilla_damping_has_no_effect():
    for m in (0.0, 0.5, 1.0):
        reference = ancilla_efficiency(1.0, m)
        for t in np.linspace(0, 1, 11):
            assert abs(protocol_efficiency(DisentanglementParams(1, t, 1, 1), m) - reference) < 1e-12
    assert abs(ancilla_efficiency(0.37, 1.0) - 5 / 6) < 1e-12


def test_copy_formula_matches_general_form():
    for t1 in np.linspace(0, 1, 6):
        for t2 in np.linspace(0, 1, 6):
            for m in (0.0, 0.4, 1.0):
                for copy in (1, 2):
                    general = protocol_efficiency(DisentanglementParams(1, 1, t1, t2), m, copy)
                    assert abs(general - copy_efficiency(t1, t2, m, copy)) < 1e-12


def test_copy_formula_limits():
    assert abs(copy_efficiency(1, 1, 1.0) - 5 / 6) < 1e-12
    assert abs(copy_efficiency(0, 0, 1.0) - 2 / 3) < 1e-12


def test_copy_formula_reduces_to_port_style_expression():
    # with the second copy undamped, copy 1 sees the port-style formula
    for t in np.linspace(0, 1, 11):
        for m in (0.2, 1.0):
            expected = (11 / 18) * (1 + (4 / 11) * pair_concurrence(m) * pair_concurrence(t))
            assert abs(copy_efficiency(t, 1.0, m, 1) - expected) < 1e-12


def test_efficiency_equals_sum_of_fp_terms():
    rng = np.random.default_rng(3)
    for _ in range(50):
        params, m = random_point(rng)
        for copy in (1, 2):
            total = average_fidelity_probability(params, m, copy).sum()
            assert abs(total - protocol_efficiency(params, m, copy)) < 1e-12


# ---------------------------------------------------------------------------
# the exact simulation kernel agrees with the reference protocol path
# ---------------------------------------------------------------------------

def test_born_kernel_matches_run_protocol():
    rng = np.random.default_rng(5)
    for _ in range(20):
        params, m = random_point(rng)
        u = rng.uniform()
        alpha, beta = np.sqrt(u), np.sqrt(1 - u) * np.exp(2j * np.pi * rng.uniform())
        probabilities, fp1, fp2 = born_values(build_channel(params), m, [alpha], [beta])
        result = run_protocol(alpha, beta, params, m)
        np.testing.assert_allclose(probabilities[0], result.probabilities(), atol=1e-12)
        for j, record in enumerate(result.records):
            if record.probability > 1e-12:
                assert abs(fp1[0, j] / record.probability - record.fidelity_1) < 1e-11
                assert abs(fp2[0, j] / record.probability - record.fidelity_2) < 1e-11


# ---------------------------------------------------------------------------
# triple agreement
# ---------------------------------------------------------------------------

def test_moment_oracle_matches_closed_forms_on_random_points():
    rng = np.random.default_rng(7)
    for _ in range(200):
        params, m = random_point(rng)
        avg_p, avg_fp1, avg_fp2 = moment_average_values(build_channel(params), m)
        assert np.max(np.abs(avg_p - average_probabilities(params, m))) < 1e-12
        assert np.max(np.abs(avg_fp1 - average_fidelity_probability(params, m, 1))) < 1e-12
        assert np.max(np.abs(avg_fp2 - average_fidelity_probability(params, m, 2))) < 1e-12
        assert abs(avg_fp1.sum() - protocol_efficiency(params, m, 1)) < 1e-12


def test_monte_carlo_matches_closed_form_within_four_sigma():
    rng = np.random.default_rng(9)
    for index in range(10):
        params, m = random_point(rng)
        closed = protocol_efficiency(params, m)
        estimate, stderr = monte_carlo_efficiency(params, m, samples=20_000, seed=1000 + index)
        assert abs(estimate - closed) < 4 * stderr + 1e-12


def test_monte_carlo_is_deterministic_under_seed():
    first = monte_carlo_efficiency(IDEAL, 0.8, samples=5_000, seed=77)
    second = monte_carlo_efficiency(IDEAL, 0.8, samples=5_000, seed=77)
    assert first == second


def test_monte_carlo_validates_arguments():
    with pytest.raises(ValueError, match="samples"):
        monte_carlo_efficiency(IDEAL, 1.0, samples=0)
    with pytest.raises(ValueError, match="copy"):
        monte_carlo_efficiency(IDEAL, 1.0, copy=3)


def test_closed_forms_reject_complex_parameters():
    with pytest.raises(ValueError, match="must be real"):
        protocol_efficiency(DisentanglementParams(0.5j, 1, 1, 1), 1.0)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def test_reports_agree_across_methods():
    params, m = DisentanglementParams(0.6, 0.8, 0.9, 0.3), 0.7
    closed = closed_form_report(params, m)
    oracle = moment_average_report(params, m)
    sampled = monte_carlo_report(params, m, samples=40_000, seed=11)
    assert closed.method == "closed_form" and closed.mc_stderr is None
    assert oracle.method == "moment_average"
    assert sampled.method == "monte_carlo" and sampled.mc_stderr > 0
    np.testing.assert_allclose(closed.avg_probabilities, oracle.avg_probabilities, atol=1e-12)
    np.testing.assert_allclose(closed.avg_fp_copy1, oracle.avg_fp_copy1, atol=1e-12)
    assert abs(closed.efficiency_copy1 - oracle.efficiency_copy1) < 1e-12
    assert abs(closed.efficiency_copy2 - oracle.efficiency_copy2) < 1e-12
    assert abs(sampled.efficiency_copy1 - closed.efficiency_copy1) < 4 * sampled.mc_stderr + 1e-12


# ---------------------------------------------------------------------------
# structure of the efficiency landscape
# ---------------------------------------------------------------------------

def test_cloning_ceiling_with_undamped_ancilla():
    rng = np.random.default_rng(13)
    for _ in range(300):
        n_p, n_c1, n_c2, m = rng.uniform(0, 1, 4)
        value = protocol_efficiency(DisentanglementParams(n_p, 1.0, n_c1, n_c2), m)
        assert value <= 5 / 6 + 1e-12


def test_symmetric_copy_family_spans_classical_to_optimal():
    values = [copy_efficiency(t, t, 1.0) for t in np.linspace(0, 1, 101)]
    assert min(values) >= 2 / 3 - 1e-12
    assert max(values) <= 5 / 6 + 1e-12
    assert abs(values[0] - 2 / 3) < 1e-12
    assert abs(values[-1] - 5 / 6) < 1e-12


def test_efficiency_monotone_in_entanglement_for_both_families():
    fine = np.linspace(0, 1, 101)
    port = [(closed_form_single(t), port_efficiency(t, 1.0)) for t in fine]
    copies = [(closed_form_pair(t, t, "same_side"), copy_efficiency(t, t, 1.0)) for t in fine]
    for curve in (port, copies):
        entanglement = [e for e, _ in curve]
        efficiency = [c for _, c in curve]
        assert all(b >= a - 1e-12 for a, b in zip(entanglement, entanglement[1:]))
        assert all(b >= a - 1e-12 for a, b in zip(efficiency, efficiency[1:]))


def test_best_measurement_parameter_is_always_one():
    for n_c1 in np.linspace(0, 1, 5):
        for n_c2 in np.linspace(0, 1, 5):
            assert best_measurement_param_for_copies(n_c1, n_c2) == 1.0
    with pytest.raises(ValueError, match="outside"):
        best_measurement_param_for_copies(1.2, 0.5)
