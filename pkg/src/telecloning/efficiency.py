"""Input-averaged protocol efficiency.

Three mutually independent routes compute the fidelity-weighted transmission
rate sum_j <P_j F_j>:

* closed forms in the damping parameters and the measurement parameter m,
* a moment-average oracle that probes the exact simulation at a handful of
  inputs, reconstructs <P_j F_j> as a polynomial in |alpha|^2, and substitutes
  the uniform-input moments, and
* seeded Monte Carlo over uniformly random pure inputs.

The oracle routes accept any channel state on (P, A, C1, C2), not just the
damped family, so converted channels can be scored with the same machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import DisentanglementParams, build_channel
from .entanglement import pair_concurrence
from .protocol import OUTCOME_ORDER, correction_for, modified_bell_basis
from .states import CHANNEL_REGISTER, IDENTITY_2, PureState


@dataclass(frozen=True)
class InputMoments:
    """Moments of |alpha|^2 over the input ensemble: <u>, <u^2>, <u(1-u)>."""

    m2: float
    m4: float
    mab: float

    def __post_init__(self) -> None:
        if abs(self.mab - (self.m2 - self.m4)) > 1e-12:
            raise ValueError("inconsistent moments: mab must equal m2 - m4")

    @classmethod
    def haar(cls) -> "InputMoments":
        """Uniform pure qubit inputs: <|a|^2> = 1/2, <|a|^4> = 1/3, <|ab|^2> = 1/6."""
        return cls(m2=0.5, m4=1.0 / 3.0, mab=1.0 / 6.0)


HAAR_MOMENTS = InputMoments.haar()


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def _real_params(params: DisentanglementParams) -> tuple[float, float, float, float]:
    return params.real_tuple()


def _norm_factors(params: DisentanglementParams, m: float) -> tuple[float, float]:
    """Squared channel normalization A^2 and basis normalization M^2."""
    n_p, n_a, n_c1, n_c2 = _real_params(params)
    a2 = 1.0 / (
        1.0
        + (n_p * n_c1) ** 2 / 4
        + (n_a * n_c1) ** 2 / 4
        + (n_p * n_c2) ** 2 / 4
        + (n_a * n_c2) ** 2 / 4
        + (n_p * n_a * n_c1 * n_c2) ** 2
    )
    m2 = 1.0 / (1.0 + m * m)
    return a2, m2


def average_probabilities(params: DisentanglementParams, m: float) -> np.ndarray:
    """Input-averaged outcome probabilities, ordered (phi+, phi-, psi+, psi-).

    phi+ and psi- share one value, phi- and psi+ the other; the four sum to 1.
    """
    n_p, n_a, n_c1, n_c2 = _real_params(params)
    a2, m2 = _norm_factors(params, m)
    plus = (a2 * m2 / 2.0) * (
        1.0
        + n_p**2 * n_c1**2 * m**2 / 4
        + n_a**2 * n_c1**2 / 4
        + n_p**2 * n_c2**2 * m**2 / 4
        + n_a**2 * n_c2**2 / 4
        + n_p**2 * n_a**2 * n_c1**2 * n_c2**2 * m**2
    )
    minus = (a2 * m2 / 2.0) * (
        m**2
        + n_p**2 * n_c1**2 / 4
        + n_a**2 * n_c1**2 * m**2 / 4
        + n_p**2 * n_c2**2 / 4
        + n_a**2 * n_c2**2 * m**2 / 4
        + n_p**2 * n_a**2 * n_c1**2 * n_c2**2
    )
    return np.array([plus, minus, minus, plus])


def average_fidelity_probability(
    params: DisentanglementParams, m: float, copy: int = 1
) -> np.ndarray:
    """Input-averaged <F P> per outcome, ordered (phi+, phi-, psi+, psi-).

    Copy 2 is obtained from copy 1 by swapping the two copy strengths.
    """
    if copy == 2:
        params = params.swap_copies()
    elif copy != 1:
        raise ValueError(f"copy must be 1 or 2, got {copy}")
    n_p, n_a, n_c1, n_c2 = _real_params(params)
    a2, m2 = _norm_factors(params, m)
    plus = (a2 * m2 / 3.0) * (
        1.0
        + n_a**2 * n_c1**2 / 8
        + n_a**2 * n_c2**2 / 4
        + n_p * n_c1 * m / 2
        + n_p * n_a**2 * n_c1 * n_c2**2 * m / 2
        + n_p**2 * n_c1**2 * m**2 / 4
        + n_p**2 * n_c2**2 * m**2 / 8
        + n_p**2 * n_a**2 * n_c1**2 * n_c2**2 * m**2
    )
    minus = (a2 * m2 / 3.0) * (
        m**2
        + n_a**2 * n_c1**2 * m**2 / 8
        + n_a**2 * n_c2**2 * m**2 / 4
        + n_p * n_c1 * m / 2
        + n_p * n_a**2 * n_c1 * n_c2**2 * m / 2
        + n_p**2 * n_c1**2 / 4
        + n_p**2 * n_c2**2 / 8
        + n_p**2 * n_a**2 * n_c1**2 * n_c2**2
    )
    return np.array([plus, minus, minus, plus])


def protocol_efficiency(params: DisentanglementParams, m: float, copy: int = 1) -> float:
    """Closed-form efficiency sum_j <P_j F_j> = (2/3)(1 + ratio/2)."""
    if copy == 2:
        params = params.swap_copies()
    elif copy != 1:
        raise ValueError(f"copy must be 1 or 2, got {copy}")
    n_p, n_a, n_c1, n_c2 = _real_params(params)
    numerator = (1 + n_p**2) * (1 + n_c1**2) * (1 + (n_a * n_c2) ** 2) * pair_concurrence(
        n_p
    ) * pair_concurrence(n_c1) * pair_concurrence(m) - ((n_a * n_c1) ** 2 + (n_p * n_c2) ** 2)
    denominator = (n_p**2 + n_a**2) * (n_c1**2 + n_c2**2) + 4.0 * (
        1.0 + (n_p * n_a * n_c1 * n_c2) ** 2
    )
    # the constant 4 keeps the denominator bounded away from zero
    if denominator < 4.0 - 1e-9:
        raise AssertionError(f"degenerate efficiency denominator {denominator}")
    return (2.0 / 3.0) * (1.0 + 0.5 * numerator / denominator)


def port_efficiency(n_p: float, m: float) -> float:
    """Efficiency with only the port damped (both copies receive the same value)."""
    return (11.0 / 18.0) * (1.0 + 4.0 * pair_concurrence(m) * pair_concurrence(n_p) / 11.0)


def ancilla_efficiency(n_a: float, m: float) -> float:
    """Efficiency with only the ancilla damped; independent of n_a by construction."""
    del n_a  # damping the ancilla does not change the efficiency
    return (11.0 / 18.0) * (1.0 + 4.0 * pair_concurrence(m) / 11.0)


def copy_efficiency(n_c1: float, n_c2: float, m: float, copy: int = 1) -> float:
    """Efficiency with only the copies damped (port and ancilla ideal)."""
    if copy == 2:
        n_c1, n_c2 = n_c2, n_c1
    elif copy != 1:
        raise ValueError(f"copy must be 1 or 2, got {copy}")
    coupling = (1.0 + n_c1**2) * (1.0 + n_c2**2) / (1.0 + (n_c1 * n_c2) ** 2)
    kappa_1 = 1.0 / (1.0 + coupling)
    kappa_2 = 1.0 / (1.0 + 1.0 / coupling)
    return 0.5 * (
        1.0 + (2.0 / 3.0) * (kappa_1 + kappa_2 * pair_concurrence(n_c1) * pair_concurrence(m))
    )


def best_measurement_param_for_copies(n_c1: float, n_c2: float) -> float:
    """argmax over m in [0, 1] of the copy-case efficiency (grid + refinement).

    Ties break toward larger m; the efficiency is non-decreasing in m on
    [0, 1], so the result is always 1.
    """
    for name, value in (("n_c1", n_c1), ("n_c2", n_c2)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name}={value} outside [0, 1]")

    def score(m: float) -> float:
        return copy_efficiency(n_c1, n_c2, m, copy=1)

    grid = np.linspace(0.0, 1.0, 101)
    values = [score(m) for m in grid]
    best = len(values) - 1 - int(np.argmax(values[::-1]))  # ties break toward larger m
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    candidates = [(values[best], grid[best]), (score(lo), lo), (score(hi), hi)]
    # golden-section refinement inside the bracketing cell
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    for _ in range(60):
        fc, fd = score(c), score(d)
        candidates.append((fc, c))
        candidates.append((fd, d))
        if fc > fd:
            b, d = d, c
            c = b - inv_phi * (b - a)
        else:
            a, c = c, d
            d = a + inv_phi * (b - a)
    return float(max(candidates)[1])


# ---------------------------------------------------------------------------
# exact simulation kernel (vectorized over inputs)
# ---------------------------------------------------------------------------

def _projection_tensors(channel: PureState, m: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-outcome remainder generators: remainder_j = alpha*a[j] + beta*b[j].

    a and b have shape (4, 8) over (A, C1, C2); row order follows OUTCOME_ORDER.
    """
    chan = channel.reorder(CHANNEL_REGISTER).amplitudes.reshape(2, 8)
    basis = modified_bell_basis(m)
    a = np.empty((4, 8), dtype=complex)
    b = np.empty((4, 8), dtype=complex)
    for j, element in enumerate(basis.states):
        bell = element.amplitudes.reshape(2, 2)  # (X, P)
        a[j] = bell[0].conj() @ chan
        b[j] = bell[1].conj() @ chan
    return a, b


def born_values(
    channel: PureState, m: float, alphas: np.ndarray, betas: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact per-input, per-outcome Born values.

    Returns (P, FP1, FP2), each of shape (n_inputs, 4): the outcome
    probability and the products P_j * F_j for each copy, computed on raw
    (unnormalized) projections so zero-probability branches need no special
    casing. Row order of outcomes follows OUTCOME_ORDER.
    """
    alphas = np.asarray(alphas, dtype=complex).reshape(-1)
    betas = np.asarray(betas, dtype=complex).reshape(-1)
    a, b = _projection_tensors(channel, m)
    remainder = alphas[:, None, None] * a[None] + betas[:, None, None] * b[None]  # (N, 4, 8)
    probabilities = np.sum(np.abs(remainder) ** 2, axis=2)

    conj_input = np.stack([alphas, betas], axis=1).conj()  # (N, 2)
    fp1 = np.empty_like(probabilities)
    fp2 = np.empty_like(probabilities)
    for j, outcome in enumerate(OUTCOME_ORDER):
        pauli = correction_for(outcome)
        lifted = np.kron(IDENTITY_2, np.kron(pauli, pauli))  # corrections on C1 and C2
        corrected = (remainder[:, j, :] @ lifted.T).reshape(-1, 2, 2, 2)  # (N, A, C1, C2)
        amp1 = np.einsum("nacd,nc->nad", corrected, conj_input)
        amp2 = np.einsum("nacd,nd->nac", corrected, conj_input)
        fp1[:, j] = np.sum(np.abs(amp1) ** 2, axis=(1, 2))
        fp2[:, j] = np.sum(np.abs(amp2) ** 2, axis=(1, 2))
    return probabilities, fp1, fp2


# ---------------------------------------------------------------------------
# moment-average oracle
# ---------------------------------------------------------------------------

_PROBE_U = np.array([0.0, 0.5, 1.0])
_PROBE_PHASES = np.array([0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi])


def moment_average_values(
    channel: PureState, m: float, moments: InputMoments = HAAR_MOMENTS
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Input-averaged (P, FP1, FP2) per outcome via exact probing.

    For a fixed channel, the phase-averaged P_j and P_j F_j are quadratic
    polynomials in u = |alpha|^2. Averaging the simulation over four relative
    phases kills every phase harmonic exactly; probing u at three nodes then
    determines the polynomial, and the ensemble average is the moment
    substitution <1, u, u^2> -> (1, m2, m4). No randomness is involved.
    """
    phase_averaged = []
    for u in _PROBE_U:
        alphas = np.full(_PROBE_PHASES.size, np.sqrt(u), dtype=complex)
        betas = np.sqrt(1.0 - u) * np.exp(1j * _PROBE_PHASES)
        p, fp1, fp2 = born_values(channel, m, alphas, betas)
        phase_averaged.append(np.concatenate([p.mean(0), fp1.mean(0), fp2.mean(0)]))
    vandermonde = np.vander(_PROBE_U, 3, increasing=True)  # rows: 1, u, u^2
    coefficients = np.linalg.solve(vandermonde, np.array(phase_averaged))
    averaged = np.array([1.0, moments.m2, moments.m4]) @ coefficients
    return averaged[0:4], averaged[4:8], averaged[8:12]


def moment_average_efficiency(
    channel: PureState, m: float, copy: int = 1, moments: InputMoments = HAAR_MOMENTS
) -> float:
    """Oracle efficiency sum_j <P_j F_j> for an arbitrary channel."""
    if copy not in (1, 2):
        raise ValueError(f"copy must be 1 or 2, got {copy}")
    _, fp1, fp2 = moment_average_values(channel, m, moments)
    return float((fp1 if copy == 1 else fp2).sum())


# ---------------------------------------------------------------------------
# Monte Carlo oracle
# ---------------------------------------------------------------------------

def sample_haar_inputs(rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniformly random pure qubit inputs: cos(theta) uniform on [-1, 1],
    relative phase uniform, global phase fixed by a real alpha."""
    u = 0.5 * (1.0 + rng.uniform(-1.0, 1.0, size))
    phase = rng.uniform(0.0, 2.0 * np.pi, size)
    return np.sqrt(u).astype(complex), np.sqrt(1.0 - u) * np.exp(1j * phase)


def monte_carlo_efficiency_over_channel(
    channel: PureState,
    m: float,
    copy: int = 1,
    samples: int = 100_000,
    seed: int = 0,
    chunk: int = 65_536,
) -> tuple[float, float]:
    """Monte Carlo estimate of the efficiency over an arbitrary channel.

    Draws uniform pure inputs, evaluates the per-input sum_j P_j F_j exactly,
    and returns (sample mean, standard error). Deterministic for a fixed seed.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if copy not in (1, 2):
        raise ValueError(f"copy must be 1 or 2, got {copy}")
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    remaining = samples
    while remaining > 0:
        batch = min(chunk, remaining)
        alphas, betas = sample_haar_inputs(rng, batch)
        _, fp1, fp2 = born_values(channel, m, alphas, betas)
        values = (fp1 if copy == 1 else fp2).sum(axis=1)
        total += float(values.sum())
        total_sq += float((values**2).sum())
        remaining -= batch
    mean = total / samples
    variance = max(total_sq / samples - mean**2, 0.0)
    stderr = float(np.sqrt(variance / samples))
    return mean, stderr


def monte_carlo_efficiency(
    params: DisentanglementParams,
    m: float,
    copy: int = 1,
    samples: int = 100_000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo efficiency over the damped channel; see the channel variant."""
    return monte_carlo_efficiency_over_channel(build_channel(params), m, copy, samples, seed)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EfficiencyReport:
    """Averaged probabilities, <F P> products, and per-copy efficiencies,
    tagged with the route that produced them."""

    params: DisentanglementParams
    m: float
    avg_probabilities: np.ndarray
    avg_fp_copy1: np.ndarray
    avg_fp_copy2: np.ndarray
    efficiency_copy1: float
    efficiency_copy2: float
    method: str
    mc_stderr: float | None = None


def closed_form_report(params: DisentanglementParams, m: float) -> EfficiencyReport:
    fp1 = average_fidelity_probability(params, m, copy=1)
    fp2 = average_fidelity_probability(params, m, copy=2)
    return EfficiencyReport(
        params,
        m,
        average_probabilities(params, m),
        fp1,
        fp2,
        protocol_efficiency(params, m, copy=1),
        protocol_efficiency(params, m, copy=2),
        method="closed_form",
    )


def moment_average_report(params: DisentanglementParams, m: float) -> EfficiencyReport:
    channel = build_channel(params)
    p, fp1, fp2 = moment_average_values(channel, m)
    return EfficiencyReport(
        params, m, p, fp1, fp2, float(fp1.sum()), float(fp2.sum()), method="moment_average"
    )


def monte_carlo_report(
    params: DisentanglementParams,
    m: float,
    samples: int = 100_000,
    seed: int = 0,
    chunk: int = 65_536,
) -> EfficiencyReport:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    channel = build_channel(params)
    rng = np.random.default_rng(seed)
    sums = np.zeros(12)
    eff1_sum = eff1_sq = eff2_sum = 0.0
    remaining = samples
    while remaining > 0:
        batch = min(chunk, remaining)
        alphas, betas = sample_haar_inputs(rng, batch)
        p, fp1, fp2 = born_values(channel, m, alphas, betas)
        sums += np.concatenate([p.sum(0), fp1.sum(0), fp2.sum(0)])
        eff1 = fp1.sum(axis=1)
        eff1_sum += float(eff1.sum())
        eff1_sq += float((eff1**2).sum())
        eff2_sum += float(fp2.sum(axis=1).sum())
        remaining -= batch
    sums /= samples
    mean1 = eff1_sum / samples
    variance = max(eff1_sq / samples - mean1**2, 0.0)
    return EfficiencyReport(
        params,
        m,
        sums[0:4],
        sums[4:8],
        sums[8:12],
        mean1,
        eff2_sum / samples,
        method="monte_carlo",
        mc_stderr=float(np.sqrt(variance / samples)),
    )
