"""Entanglement measures: Meyer-Wallach global entanglement and concurrence.

The closed forms cover the damped-channel families (one or two damped
qubits); each one is held equal to the reduced-density pipeline by tests.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from .states import ATOL, DensityMatrix, PureState, SIGMA_Y, partial_trace

PairKind = Literal["same_side", "mixed"]


def global_entanglement(state: PureState) -> float:
    """Mean linear entropy of the single-qubit reductions: 2(1 - mean purity)."""
    n = state.n_qubits
    total = sum(partial_trace(state, (label,)).purity() for label in state.register)
    value = 2.0 * (1.0 - total / n)
    if not -ATOL <= value <= 1.0 + ATOL:
        raise ValueError(f"global entanglement {value} outside [0, 1]")
    return max(value, 0.0)


def closed_form_single(n: float) -> float:
    """Global entanglement of the channel with one qubit damped by n, rest ideal.

    The same expression holds whichever of the four qubits is damped.
    """
    n2 = n * n
    return (1.0 + 6.0 * n2 + n2 * n2) / (2.0 * (1.0 + n2) ** 2)


def closed_form_pair(n_i: float, n_j: float, kind: PairKind) -> float:
    """Global entanglement of the channel with two qubits damped, rest ideal.

    "same_side": the damped pair is (ancilla, port) or (copy 1, copy 2);
    "mixed": one damped qubit on each side. Both forms are symmetric under
    swapping the two strengths.
    """
    a, b = n_i * n_i, n_j * n_j
    if kind == "same_side":
        numerator = (
            8.0 * (a + b) + a * a + b * b + 38.0 * a * b + 8.0 * a * b * (a + b)
        )
        return numerator / (2.0 * (2.0 + a + b + 2.0 * a * b) ** 2)
    if kind == "mixed":
        numerator = 2.0 * (4.0 + 5.0 * a + b * (5.0 + (44.0 + 5.0 * b) * a + (5.0 + 4.0 * b) * a * a))
        return numerator / (5.0 + a + b + 5.0 * a * b) ** 2
    raise ValueError(f"unknown pair kind {kind!r}; expected 'same_side' or 'mixed'")


def pair_concurrence(n: float) -> float:
    """Concurrence 2n/(1+n^2) of the two-qubit state (|00> + n|11>)/sqrt(1+n^2)."""
    return 2.0 * n / (1.0 + n * n)


def concurrence(rho: DensityMatrix) -> float:
    """Two-qubit concurrence via the spin-flip eigenvalue construction.

    The decreasingly ordered square roots of the eigenvalues of
    rho (YY) rho* (YY) are computed as the singular values of
    sqrt(rho) (YY) sqrt(rho)*, which keeps true zeros at machine epsilon
    instead of sqrt(epsilon).
    """
    if rho.n_qubits != 2:
        raise ValueError(f"concurrence needs a two-qubit state, got {rho.n_qubits} qubits")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    w, v = np.linalg.eigh(rho.matrix)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    roots = np.linalg.svd(sqrt_rho @ yy @ sqrt_rho.conj(), compute_uv=False)
    roots = np.sort(roots)
    return max(0.0, float(roots[3] - roots[2] - roots[1] - roots[0]))
