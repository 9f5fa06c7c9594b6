"""Telecloning channel construction.

Two independent routes to the same four-qubit channel over (P, A, C1, C2):
build the ideal channel from symmetric states and damp each qubit with the
per-qubit disentanglement map, or write the damped channel down in closed
form. Tests hold the two routes equal on a parameter grid.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb, sqrt
from itertools import combinations

import numpy as np

from .states import (
    A,
    C1,
    C2,
    CHANNEL_REGISTER,
    Label,
    P,
    PureState,
)


@dataclass(frozen=True)
class DisentanglementParams:
    """Per-qubit damping strengths for the channel qubits.

    Construction accepts any complex values; the analytics layer restricts
    itself to real values in [0, 1].
    """

    n_p: complex = 1.0
    n_a: complex = 1.0
    n_c1: complex = 1.0
    n_c2: complex = 1.0

    @classmethod
    def ideal(cls) -> "DisentanglementParams":
        return cls(1.0, 1.0, 1.0, 1.0)

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.n_p, self.n_a, self.n_c1, self.n_c2)

    def swap_copies(self) -> "DisentanglementParams":
        return replace(self, n_c1=self.n_c2, n_c2=self.n_c1)

    def require_physical(self) -> "DisentanglementParams":
        """Reject values outside the real interval [0, 1] (sweep range)."""
        for name, value in zip(("n_p", "n_a", "n_c1", "n_c2"), self.as_tuple()):
            value = complex(value)
            if abs(value.imag) > 0.0 or not 0.0 <= value.real <= 1.0:
                raise ValueError(f"{name}={value} is outside the physical sweep range [0, 1]")
        return self

    def real_tuple(self) -> tuple[float, float, float, float]:
        """Real values for the averaged analytics; any real magnitude is fine."""
        for name, value in zip(("n_p", "n_a", "n_c1", "n_c2"), self.as_tuple()):
            if complex(value).imag != 0.0:
                raise ValueError(f"{name}={value} must be real for averaged analytics")
        return tuple(float(complex(v).real) for v in self.as_tuple())


def symmetric_state(num_qubits: int, num_ones: int, labels: tuple[Label, ...] | None = None) -> PureState:
    """Permutation-symmetric normalized state with `num_ones` qubits set.

    Equal-amplitude superposition of every bit string of weight `num_ones`,
    each amplitude 1/sqrt(C(num_qubits, num_ones)).
    """
    if not 1 <= num_qubits <= 4:
        raise ValueError(f"symmetric_state supports 1..4 qubits, got {num_qubits}")
    if not 0 <= num_ones <= num_qubits:
        raise ValueError(f"num_ones={num_ones} out of range for {num_qubits} qubit(s)")
    if labels is None:
        labels = tuple(f"q{i}" for i in range(num_qubits))
    amps = np.zeros(2**num_qubits, dtype=complex)
    weight = 1.0 / sqrt(comb(num_qubits, num_ones))
    for positions in combinations(range(num_qubits), num_ones):
        index = sum(1 << (num_qubits - 1 - p) for p in positions)
        amps[index] = weight
    return PureState(labels, amps)


def build_ideal_channel() -> PureState:
    """Undamped telecloning channel over (P, A, C1, C2).

    The |0>_P branch pairs the ancilla carrying j excitations with the
    symmetric two-qubit copy state carrying j excitations (weights
    sqrt((2-j)/3)); the |1>_P branch is its bit-flipped mirror.
    """
    weights = [sqrt((2 - j) / 3) for j in range(2)]
    phi0 = sum(
        w * np.kron(symmetric_state(1, j).amplitudes, symmetric_state(2, j).amplitudes)
        for j, w in enumerate(weights)
    )
    phi1 = sum(
        w * np.kron(symmetric_state(1, 1 - j).amplitudes, symmetric_state(2, 2 - j).amplitudes)
        for j, w in enumerate(weights)
    )
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    amps = (np.kron(zero, phi0) + np.kron(one, phi1)) / sqrt(2)
    return PureState(CHANNEL_REGISTER, amps)


def apply_disentanglement(state: PureState, target: Label, n: complex) -> PureState:
    """Damp one qubit: |0> -> |0>, |1> -> n|1>, then renormalize."""
    axis = state.axis(target)
    if n == 1:
        return state  # identity map, bit-for-bit
    psi = np.array(state.amplitudes.reshape([2] * state.n_qubits), copy=True)
    index: list = [slice(None)] * state.n_qubits
    index[axis] = 1
    psi[tuple(index)] *= n
    nrm = np.linalg.norm(psi)
    if nrm < 1e-150:
        raise ValueError("annihilated state")
    return PureState(state.register, psi.reshape(-1) / nrm)


def build_channel(params: DisentanglementParams) -> PureState:
    """Damped telecloning channel over (P, A, C1, C2), in closed form.

    Bitwise equal (within tolerance) to applying the four single-qubit
    disentanglement maps to the ideal channel, in any order.
    """
    n_p, n_a, n_c1, n_c2 = params.as_tuple()
    amps = np.zeros(16, dtype=complex)
    amps[0b0000] = 1.0
    amps[0b1010] = n_p * n_c1 / 2
    amps[0b0110] = n_a * n_c1 / 2
    amps[0b1001] = n_p * n_c2 / 2
    amps[0b0101] = n_a * n_c2 / 2
    amps[0b1111] = n_p * n_a * n_c1 * n_c2
    return PureState(CHANNEL_REGISTER, amps / np.linalg.norm(amps))


def damp_ideal_channel(params: DisentanglementParams, order: tuple[Label, ...] = CHANNEL_REGISTER) -> PureState:
    """Sequential-map route: damp the ideal channel qubit by qubit."""
    by_label = dict(zip(CHANNEL_REGISTER, params.as_tuple()))
    state = build_ideal_channel()
    for label in order:
        state = apply_disentanglement(state, label, by_label[label])
    return state
