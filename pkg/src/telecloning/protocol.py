"""One full telecloning run: measurement basis, outcome corrections, fidelities.

Alice projects the input qubit X and the port qubit P onto a one-parameter
deformation of the Bell basis, broadcasts the outcome, and both receivers
apply the same outcome-conditioned Pauli to their copy qubits. The ancilla
is never corrected; it stays entangled with the copies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .channel import DisentanglementParams, build_channel
from .states import (
    C1,
    C2,
    CHANNEL_REGISTER,
    IDENTITY_2,
    PROB_FLOOR,
    DensityMatrix,
    Label,
    P,
    PureState,
    SIGMA_X,
    SIGMA_Z,
    X,
    apply_unitary,
    fidelity,
    measure_in_basis,
    partial_trace,
    qubit_state,
    tensor_product,
)


class Outcome(enum.Enum):
    """The four measurement results of the deformed Bell projection."""

    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"

    @classmethod
    def from_token(cls, token: str) -> "Outcome":
        token = token.strip().lower()
        for outcome in cls:
            if outcome.value == token:
                return outcome
        raise ValueError(f"unknown outcome {token!r}; expected one of "
                         f"{[o.value for o in cls]}")


OUTCOME_ORDER = (Outcome.PHI_PLUS, Outcome.PHI_MINUS, Outcome.PSI_PLUS, Outcome.PSI_MINUS)

_CORRECTIONS = {
    Outcome.PHI_PLUS: IDENTITY_2,
    Outcome.PHI_MINUS: SIGMA_Z,
    Outcome.PSI_PLUS: SIGMA_X,
    Outcome.PSI_MINUS: SIGMA_Z @ SIGMA_X,
}


def correction_for(outcome: Outcome) -> np.ndarray:
    """Single-qubit Pauli applied by each receiver for this outcome."""
    return np.array(_CORRECTIONS[outcome], copy=True)


@dataclass(frozen=True)
class ModifiedBellBasis:
    """Deformed Bell basis over a two-qubit register, orthonormal for every m."""

    m: complex
    register: tuple[Label, Label]
    states: tuple[PureState, PureState, PureState, PureState]

    def state_for(self, outcome: Outcome) -> PureState:
        return self.states[OUTCOME_ORDER.index(outcome)]


def modified_bell_basis(m: complex, register: tuple[Label, Label] = (X, P)) -> ModifiedBellBasis:
    """Bell basis with the |11> (resp. |10>) weight deformed by m.

    phi+ = (|00> + m|11>) / sqrt(1+|m|^2)      phi- = (m*|00> - |11>) / sqrt(1+|m|^2)
    psi+ = (|01> + m|10>) / sqrt(1+|m|^2)      psi- = (m*|01> - |10>) / sqrt(1+|m|^2)
    """
    scale = 1.0 / np.sqrt(1.0 + abs(m) ** 2)
    mc = np.conj(m)
    vectors = (
        np.array([1.0, 0.0, 0.0, m], dtype=complex),
        np.array([mc, 0.0, 0.0, -1.0], dtype=complex),
        np.array([0.0, 1.0, m, 0.0], dtype=complex),
        np.array([0.0, mc, -1.0, 0.0], dtype=complex),
    )
    states = tuple(PureState(register, scale * v) for v in vectors)
    return ModifiedBellBasis(m, tuple(register), states)


@dataclass(frozen=True)
class OutcomeRecord:
    """One measurement branch of a protocol run.

    `remainder` is the normalized post-measurement state of (A, C1, C2)
    before corrections. Copy states and fidelities are post-correction.
    All state fields are None for branches with probability < PROB_FLOOR.
    """

    outcome: Outcome
    probability: float
    remainder: PureState | None
    rho_1: DensityMatrix | None
    rho_2: DensityMatrix | None
    fidelity_1: float | None
    fidelity_2: float | None


@dataclass(frozen=True)
class RunResult:
    alpha: complex
    beta: complex
    m: complex
    records: tuple[OutcomeRecord, ...]

    def record_for(self, outcome: Outcome) -> OutcomeRecord:
        return self.records[OUTCOME_ORDER.index(outcome)]

    def probabilities(self) -> np.ndarray:
        return np.array([r.probability for r in self.records])

    def fidelities(self, copy: int = 1) -> np.ndarray:
        """Per-outcome fidelities (NaN for undefined zero-probability branches)."""
        values = [(r.fidelity_1 if copy == 1 else r.fidelity_2) for r in self.records]
        return np.array([np.nan if v is None else v for v in values])


@dataclass(frozen=True)
class ProbabilisticResult:
    """Post-selected run: records keep only accepted outcomes, with
    probabilities renormalized to condition on acceptance."""

    success_probability: float
    records: tuple[OutcomeRecord, ...]


def _validate_input(alpha: complex, beta: complex) -> None:
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-10:
        raise ValueError(f"input state not normalized: |a|^2+|b|^2 = "
                         f"{abs(alpha) ** 2 + abs(beta) ** 2}")


def run_protocol_over_channel(
    alpha: complex, beta: complex, channel: PureState, m: complex
) -> RunResult:
    """Run the protocol over an arbitrary channel state on (P, A, C1, C2)."""
    _validate_input(alpha, beta)
    channel = channel.reorder(CHANNEL_REGISTER)
    joint = tensor_product(qubit_state(alpha, beta, X), channel)
    basis = modified_bell_basis(m)
    branches = measure_in_basis(joint, basis.states, (X, P))

    records = []
    for outcome, branch in zip(OUTCOME_ORDER, branches):
        if branch.state is None:
            records.append(OutcomeRecord(outcome, branch.probability, None, None, None, None, None))
            continue
        pauli = correction_for(outcome)
        corrected = apply_unitary(branch.state, pauli, (C1,))
        corrected = apply_unitary(corrected, pauli, (C2,))
        rho_1 = partial_trace(corrected, (C1,))
        rho_2 = partial_trace(corrected, (C2,))
        records.append(
            OutcomeRecord(
                outcome,
                branch.probability,
                branch.state,
                rho_1,
                rho_2,
                fidelity(rho_1, qubit_state(alpha, beta, C1)),
                fidelity(rho_2, qubit_state(alpha, beta, C2)),
            )
        )
    return RunResult(alpha, beta, m, tuple(records))


def run_protocol(
    alpha: complex, beta: complex, params: DisentanglementParams, m: complex
) -> RunResult:
    """Full run over the damped channel: probabilities, copy states, fidelities."""
    return run_protocol_over_channel(alpha, beta, build_channel(params), m)


def run_probabilistic(
    alpha: complex,
    beta: complex,
    params: DisentanglementParams,
    m: complex,
    accepted: Iterable[Outcome],
) -> ProbabilisticResult:
    """Post-selected protocol: keep only the accepted outcomes."""
    accepted = frozenset(accepted)
    if not accepted:
        raise ValueError("accepted outcome set must be non-empty")
    result = run_protocol(alpha, beta, params, m)
    kept = tuple(r for r in result.records if r.outcome in accepted)
    success = float(sum(r.probability for r in kept))
    if success < PROB_FLOOR:
        raise ValueError("accepted outcomes have zero total probability")
    renormalized = tuple(replace(r, probability=r.probability / success) for r in kept)
    return ProbabilisticResult(success, renormalized)
